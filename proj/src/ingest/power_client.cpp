#include "wxbench/ingest/power_client.hpp"

#include <httplib.h>

#include <algorithm>
#include <thread>

#include "wxbench/core/errors.hpp"
#include "wxbench/core/text.hpp"

namespace wxbench::ingest {
namespace {

std::string compact_date(const Date& d) {
  auto iso = format_date(d);
  iso.erase(std::remove(iso.begin(), iso.end(), '-'), iso.end());
  return iso;
}

void validate(const PowerRequest& r) {
  if (!(r.start < r.end)) throw InvalidArgument("POWER request: start date must precede end date");
  if (r.parameters.empty()) throw InvalidArgument("POWER request: no parameters");
  const auto& known = power_parameter_names();
  for (const auto& p : r.parameters) {
    if (std::find(known.begin(), known.end(), p) == known.end()) {
      throw InvalidArgument("POWER request: unsupported parameter '" + p + "'");
    }
  }
}

std::string excerpt(const std::string& body) {
  constexpr std::size_t kMax = 400;
  return body.size() <= kMax ? body : body.substr(0, kMax) + "...";
}

}  // namespace

std::vector<std::string> default_power_parameters() {
  return {power_parameter_names().begin(), power_parameter_names().end()};
}

PowerRequest dhaka_request() {
  using namespace std::chrono;
  return PowerRequest{.latitude = 23.8103,
                      .longitude = 90.4125,
                      .start = Date{year{2003}, January, day{1}},
                      .end = Date{year{2023}, January, day{1}},
                      .parameters = default_power_parameters()};
}

std::string power_request_target(const PowerRequest& request, const PowerClientOptions& options) {
  std::string params;
  for (const auto& p : request.parameters) {
    if (!params.empty()) params += ',';
    params += p;
  }
  return options.path + "?parameters=" + params + "&community=" + options.community +
         "&latitude=" + format_double(request.latitude) + "&longitude=" + format_double(request.longitude) +
         "&start=" + compact_date(request.start) + "&end=" + compact_date(request.end) + "&format=CSV";
}

std::string fetch_power_daily(const PowerRequest& request, const PowerClientOptions& options) {
  validate(request);
  if (options.attempts < 1) throw InvalidArgument("POWER client: attempts must be >= 1");

  const std::string target = power_request_target(request, options);
  auto backoff = options.initial_backoff;
  std::string last_error;
  int last_status = 0;

  for (int attempt = 1; attempt <= options.attempts; ++attempt) {
    httplib::Client client(options.base_url);
    if (!client.is_valid()) throw InvalidArgument("POWER client: unusable base URL '" + options.base_url + "'");
    client.set_connection_timeout(options.timeout);
    client.set_read_timeout(options.timeout);
    client.set_follow_location(true);

    auto res = client.Get(target);
    if (res && res->status == 200) return res->body;

    bool retriable = true;
    if (!res) {
      last_status = 0;
      last_error = "request to " + options.base_url + " failed: " + httplib::to_string(res.error());
    } else {
      last_status = res->status;
      last_error = "POWER API returned HTTP " + std::to_string(res->status) + ": " + excerpt(res->body);
      retriable = res->status == 429 || res->status >= 500;
    }
    if (!retriable) throw NetworkError(last_error, last_status, false);
    if (attempt < options.attempts) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
  }
  throw NetworkError(last_error + " (after " + std::to_string(options.attempts) + " attempts)", last_status, true);
}

}  // namespace wxbench::ingest
