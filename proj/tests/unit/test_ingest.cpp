#include <doctest.h>

#include <httplib.h>

#include <atomic>
#include <thread>

#include "helpers.hpp"
#include "wxbench/core/errors.hpp"
#include "wxbench/core/text.hpp"
#include "wxbench/ingest/cleaning.hpp"
#include "wxbench/ingest/power_client.hpp"
#include "wxbench/ingest/power_csv.hpp"
#include "wxbench/ingest/weather.hpp"

using namespace wxbench;
using namespace wxbench::ingest;

namespace {

Date ymd(int y, unsigned m, unsigned d) {
  return std::chrono::year_month_day{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

WeatherRecord plain_record(const Date& date, double t2m) {
  WeatherRecord r;
  r.date = date;
  r.values.fill(1.0);
  r[Feature::T2M] = t2m;
  r[Feature::T2M_MIN] = t2m - 5.0;
  r[Feature::T2M_MAX] = t2m + 5.0;
  r[Feature::WS10M] = 2.0;
  r[Feature::WS10M_MIN] = 1.0;
  r[Feature::WS10M_MAX] = 3.0;
  r[Feature::RH2M] = 70.0;
  r[Feature::WD10M] = 180.0;
  r[Feature::PRECTOT] = 0.0;
  return r;
}

const char* kTinyCsv =
    "-BEGIN HEADER-\n"
    "anything\n"
    "-END HEADER-\n"
    "YEAR,MO,DY,T2M,RH2M\n"
    "2020,1,1,10.5,80\n"
    "2020,1,2,11,-999\n";

struct LocalServer {
  httplib::Server server;
  std::thread thread;
  int port{0};

  LocalServer() {
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~LocalServer() {
    server.stop();
    thread.join();
  }
  [[nodiscard]] std::string url() const { return "http://127.0.0.1:" + std::to_string(port); }
};

PowerClientOptions fast_options(const std::string& url) {
  PowerClientOptions o;
  o.base_url = url;
  o.initial_backoff = std::chrono::milliseconds(1);
  o.timeout = std::chrono::seconds(5);
  return o;
}

}  // namespace

TEST_CASE("feature catalogue") {
  CHECK(feature_names().size() == 16);
  CHECK(feature_names().front() == "T2M");
  CHECK(feature_names()[index_of(Feature::PRECTOT)] == "PRECTOT");
  CHECK(power_parameter_names()[index_of(Feature::PRECTOT)] == "PRECTOTCORR");
  CHECK(feature_from_name("PRECTOTCORR") == Feature::PRECTOT);
  CHECK(feature_from_name("PRECTOT") == Feature::PRECTOT);
  CHECK(feature_from_name("WS10M_MIN") == Feature::WS10M_MIN);
  CHECK_FALSE(feature_from_name("nope").has_value());
}

TEST_CASE("dates") {
  CHECK(day_number(ymd(1970, 1, 1)) == 0);
  CHECK(day_number(ymd(2023, 1, 1)) - day_number(ymd(2003, 1, 1)) + 1 == 7306);
  CHECK(date_from_day_number(day_number(ymd(2020, 2, 29))) == ymd(2020, 2, 29));
  CHECK(parse_date("2021-03-04") == ymd(2021, 3, 4));
  CHECK(parse_date("20210304") == ymd(2021, 3, 4));
  CHECK_FALSE(parse_date("2021-02-30").has_value());
  CHECK(format_date(ymd(2003, 1, 1)) == "2003-01-01");
}

TEST_CASE("table requires strictly increasing dates") {
  const auto a = plain_record(ymd(2020, 1, 1), 10);
  const auto b = plain_record(ymd(2020, 1, 2), 10);
  CHECK_NOTHROW(WeatherTable({a, b}, "t"));
  CHECK_THROWS_AS(WeatherTable({b, a}, "t"), DataError);
  CHECK_THROWS_AS(WeatherTable({a, a}, "t"), DataError);
}

TEST_CASE("parse the fixture year") {
  const auto table = load_power_csv(wxtest::fixture("dhaka_2021.csv"));
  CHECK(table.size() == 365);
  CHECK(table[0].date == ymd(2021, 1, 1));
  CHECK(table[364].date == ymd(2021, 12, 31));
  for (const auto& r : table.records()) CHECK(record_violations(r).empty());
}

TEST_CASE("parse keeps the sentinel and fills absent columns with it") {
  const auto table = parse_power_csv(kTinyCsv);
  REQUIRE(table.size() == 2);
  CHECK(table[0][Feature::T2M] == 10.5);
  CHECK(table[0][Feature::RH2M] == 80.0);
  CHECK(table[1][Feature::RH2M] == kMissingSentinel);
  CHECK(table[0][Feature::PS] == kMissingSentinel);
}

TEST_CASE("parse edge cases and errors") {
  CHECK(parse_power_csv("-BEGIN HEADER-\n-END HEADER-\nYEAR,MO,DY,T2M\n").empty());
  CHECK_THROWS_AS(parse_power_csv("YEAR,MO,DY,T2M\n2020,1,1,5\n"), ParseError);
  try {
    parse_power_csv("-END HEADER-\nYEAR,MO,DY,T2M,RH2M\n2020,1,1,5,abc\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.row() == 3);
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS(parse_power_csv("-END HEADER-\nMO,YEAR,DY,T2M\n"), ParseError);
  CHECK_THROWS_AS(parse_power_csv("-END HEADER-\nYEAR,MO,DY,T2M\n2020,1,2,5\n2020,1,1,5\n"), ParseError);
}

TEST_CASE("serialize then parse is the identity") {
  const auto table = load_power_csv(wxtest::fixture("dhaka_2021_gaps.csv"));
  const auto again = parse_power_csv(serialize_power_csv(table));
  CHECK(again == table);
  const auto clean = clean_missing(table);
  CHECK(parse_power_csv(serialize_power_csv(clean)) == clean);
}

TEST_CASE("cleaning: interpolation midpoint") {
  auto a = plain_record(ymd(2020, 1, 1), 10);
  auto b = plain_record(ymd(2020, 1, 2), 0);
  auto c = plain_record(ymd(2020, 1, 3), 20);
  b[Feature::T2M] = kMissingSentinel;
  const auto clean = clean_missing(WeatherTable({a, b, c}, "t"), CleaningPolicy::linear_interpolate);
  REQUIRE(clean.size() == 3);
  CHECK(clean.column(Feature::T2M) == std::vector<double>{10, 15, 20});
}

TEST_CASE("cleaning: interpolation follows calendar time across date gaps") {
  auto a = plain_record(ymd(2020, 1, 1), 0);
  auto b = plain_record(ymd(2020, 1, 2), 0);
  auto c = plain_record(ymd(2020, 1, 5), 40);
  b[Feature::T2M] = kMissingSentinel;
  const auto clean = clean_missing(WeatherTable({a, b, c}, "t"));
  CHECK(clean[1][Feature::T2M] == doctest::Approx(10.0));
}

TEST_CASE("cleaning: leading and trailing gaps are trimmed") {
  auto a = plain_record(ymd(2020, 1, 1), 10);
  auto b = plain_record(ymd(2020, 1, 2), 11);
  auto c = plain_record(ymd(2020, 1, 3), 12);
  a[Feature::PS] = kMissingSentinel;
  c[Feature::QV2M] = kMissingSentinel;
  const auto clean = clean_missing(WeatherTable({a, b, c}, "t"));
  REQUIRE(clean.size() == 1);
  CHECK(clean[0].date == ymd(2020, 1, 2));
}

TEST_CASE("cleaning: fixture gap counts") {
  const auto table = load_power_csv(wxtest::fixture("dhaka_2021_gaps.csv"));
  const auto sentinel_rows =
      std::count_if(table.records().begin(), table.records().end(), [](const auto& r) { return r.has_missing(); });
  CHECK(sentinel_rows == 3);
  CHECK(clean_missing(table, CleaningPolicy::drop_row).size() == 362);
  const auto interp = clean_missing(table, CleaningPolicy::linear_interpolate);
  CHECK(interp.size() == 365);
  for (const auto& r : interp.records()) CHECK(record_violations(r).empty());
}

TEST_CASE("cleaning: identity on clean tables and idempotent") {
  const auto year = load_power_csv(wxtest::fixture("dhaka_2021.csv"));
  CHECK(clean_missing(year, CleaningPolicy::drop_row) == year);
  CHECK(clean_missing(year, CleaningPolicy::linear_interpolate) == year);
  const auto gaps = load_power_csv(wxtest::fixture("dhaka_2021_gaps.csv"));
  for (auto policy : {CleaningPolicy::drop_row, CleaningPolicy::linear_interpolate}) {
    const auto once = clean_missing(gaps, policy);
    CHECK(clean_missing(once, policy) == once);
  }
}

TEST_CASE("cleaning: invariants hold on fuzzed tables") {
  Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<WeatherRecord> recs;
    for (unsigned d = 1; d <= 40; ++d) {
      WeatherRecord r;
      r.date = ymd(2020, 1, 1);
      r.date = date_from_day_number(day_number(r.date) + d * 2);
      for (auto& v : r.values) v = rng.uniform() < 0.1 ? kMissingSentinel : rng.uniform(-50.0, 420.0);
      recs.push_back(r);
    }
    recs[0].values.fill(5.0);
    recs.back().values.fill(5.0);
    const WeatherTable table(recs, "fuzz");
    for (auto policy : {CleaningPolicy::drop_row, CleaningPolicy::linear_interpolate}) {
      const auto clean = clean_missing(table, policy);
      for (const auto& r : clean.records()) CHECK(record_violations(r).empty());
      CHECK(clean_missing(clean, policy) == clean);
    }
  }
}

TEST_CASE("cleaning: an entirely missing feature is named") {
  auto a = plain_record(ymd(2020, 1, 1), 10);
  auto b = plain_record(ymd(2020, 1, 2), 11);
  a[Feature::WD10M] = kMissingSentinel;
  b[Feature::WD10M] = kMissingSentinel;
  CHECK_THROWS_WITH_AS(clean_missing(WeatherTable({a, b}, "t")), doctest::Contains("WD10M"), DataError);
}

TEST_CASE("request target matches the POWER URL layout") {
  const auto target = power_request_target(dhaka_request());
  CHECK(target.rfind("/api/temporal/daily/point?parameters=T2M,T2MDEW,", 0) == 0);
  CHECK(target.find("PRECTOTCORR") != std::string::npos);
  CHECK(target.find("&community=AG&latitude=23.8103&longitude=90.4125&start=20030101&end=20230101&format=CSV") !=
        std::string::npos);
}

TEST_CASE("fetch returns the body verbatim") {
  const auto body = read_file(wxtest::fixture("dhaka_2021.csv"));
  LocalServer local;
  std::string seen_query;
  local.server.Get("/api/temporal/daily/point", [&](const httplib::Request& req, httplib::Response& res) {
    seen_query = req.get_param_value("start") + ".." + req.get_param_value("end");
    res.set_content(body, "text/csv");
  });
  PowerRequest request = dhaka_request();
  request.start = ymd(2021, 1, 1);
  request.end = ymd(2021, 12, 31);
  const auto text = fetch_power_daily(request, fast_options(local.url()));
  CHECK(text == body);
  CHECK(seen_query == "20210101..20211231");
  CHECK(parse_power_csv(text).size() == 365);
}

TEST_CASE("fetch retries server errors then succeeds") {
  LocalServer local;
  std::atomic<int> calls{0};
  local.server.Get("/api/temporal/daily/point", [&](const httplib::Request&, httplib::Response& res) {
    if (++calls < 3) {
      res.status = 503;
      res.set_content("busy", "text/plain");
      return;
    }
    res.set_content(kTinyCsv, "text/csv");
  });
  CHECK(fetch_power_daily(dhaka_request(), fast_options(local.url())) == kTinyCsv);
  CHECK(calls == 3);
}

TEST_CASE("fetch gives up after the configured attempts") {
  LocalServer local;
  std::atomic<int> calls{0};
  local.server.Get("/api/temporal/daily/point", [&](const httplib::Request&, httplib::Response& res) {
    ++calls;
    res.status = 500;
    res.set_content("down", "text/plain");
  });
  try {
    fetch_power_daily(dhaka_request(), fast_options(local.url()));
    FAIL("expected a network error");
  } catch (const NetworkError& e) {
    CHECK(e.status() == 500);
    CHECK(e.retriable());
  }
  CHECK(calls == 3);
}

TEST_CASE("fetch reports client errors immediately with the API message") {
  LocalServer local;
  std::atomic<int> calls{0};
  local.server.Get("/api/temporal/daily/point", [&](const httplib::Request&, httplib::Response& res) {
    ++calls;
    res.status = 422;
    res.set_content(R"({"messages":["latitude must be between -90 and 90"]})", "application/json");
  });
  try {
    fetch_power_daily(dhaka_request(), fast_options(local.url()));
    FAIL("expected a network error");
  } catch (const NetworkError& e) {
    CHECK(e.status() == 422);
    CHECK_FALSE(e.retriable());
    CHECK(std::string(e.what()).find("latitude must be between") != std::string::npos);
  }
  CHECK(calls == 1);
}

TEST_CASE("fetch surfaces transport failures as network errors") {
  int port = 0;
  {
    LocalServer probe;
    port = probe.port;
  }
  auto options = fast_options("http://127.0.0.1:" + std::to_string(port));
  options.attempts = 2;
  CHECK_THROWS_AS(fetch_power_daily(dhaka_request(), options), NetworkError);
}

TEST_CASE("fetch validates the request") {
  auto request = dhaka_request();
  request.end = request.start;
  CHECK_THROWS_AS(fetch_power_daily(request), InvalidArgument);
  request = dhaka_request();
  request.parameters = {"NOT_A_PARAM"};
  CHECK_THROWS_AS(fetch_power_daily(request), InvalidArgument);
}
