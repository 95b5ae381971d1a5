#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include <cmath>
#include <regex>
#include <stdexcept>

#include "midcoef/datastore.hpp"

namespace midcoef {

std::string fetch_bfile(const std::string& url, double timeout_seconds) {
  static const std::regex pattern(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, pattern)) throw std::runtime_error("unsupported URL: " + url);
  const std::string origin = m[1].str();
  const std::string path = m[2].matched ? m[2].str() : "/";

  httplib::Client client(origin);
  const auto whole = static_cast<time_t>(std::floor(timeout_seconds));
  const auto micros = static_cast<time_t>((timeout_seconds - std::floor(timeout_seconds)) * 1e6);
  client.set_connection_timeout(whole, micros);
  client.set_read_timeout(whole, micros);
  client.set_write_timeout(whole, micros);
  client.set_follow_location(true);
  auto res = client.Get(path);
  if (!res) throw std::runtime_error("fetch failed: " + httplib::to_string(res.error()));
  if (res->status != 200) throw std::runtime_error("fetch failed: HTTP " + std::to_string(res->status));
  return res->body;
}

}  // namespace midcoef
