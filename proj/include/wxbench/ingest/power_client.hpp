/**
 * @file power_client.hpp
 * @brief Blocking client for the POWER daily point endpoint.
 */
#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "wxbench/ingest/weather.hpp"

namespace wxbench::ingest {

struct PowerRequest {
  double latitude{};
  double longitude{};
  Date start{};
  Date end{};
  std::vector<std::string> parameters{};
};

struct PowerClientOptions {
  /// Scheme + host (+ optional port); https requires an OpenSSL-enabled build.
  std::string base_url{"https://power.larc.nasa.gov"};
  std::string path{"/api/temporal/daily/point"};
  std::string community{"AG"};
  int attempts{3};
  std::chrono::milliseconds initial_backoff{1000};
  std::chrono::seconds timeout{120};
};

/// The sixteen parameters this project models, using POWER's current names.
std::vector<std::string> default_power_parameters();

/// Station and period of the Dhaka study: 23.8103 N, 90.4125 E, 2003-01-01 .. 2023-01-01.
PowerRequest dhaka_request();

/// Path + query string for a request (no scheme/host).
std::string power_request_target(const PowerRequest& request, const PowerClientOptions& options = {});

/// Returns the response body verbatim. Transport failures, 429 and 5xx
/// responses are retried with exponential backoff up to `attempts` times;
/// other non-200 statuses fail immediately. Throws NetworkError carrying the
/// status and a body excerpt, InvalidArgument for a bad request.
std::string fetch_power_daily(const PowerRequest& request, const PowerClientOptions& options = {});

}  // namespace wxbench::ingest
