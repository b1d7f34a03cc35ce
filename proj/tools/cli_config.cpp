// Copyright 2026 The HQC Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli_config.hpp"

#include "hqc/units.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <regex>

namespace hqc::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double to_number(const std::string& s, const std::string& field) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError(field + ": '" + s + "' is not a number");
  }
  if (used != s.size() || !std::isfinite(v)) throw ConfigError(field + ": '" + s + "' is not a number");
  return v;
}

}  // namespace

double parse_frequency(const std::string& text, bool raw_rad_ns, const std::string& field) {
  static const std::regex re(R"(^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([A-Za-z/]*)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw ConfigError(field + ": cannot parse frequency '" + text + "'");
  const double v = to_number(m[1].str(), field);
  const std::string unit = lower(m[2].str());
  if (unit.empty()) {
    if (raw_rad_ns) return v;
    throw ConfigError(field + ": '" + text + "' has no unit (write e.g. 10MHz, or pass --raw-rad-ns)");
  }
  if (unit == "rad/ns") return v;
  if (unit == "ghz") return units::mhz(v * 1e3);
  if (unit == "mhz") return units::mhz(v);
  if (unit == "khz") return units::khz(v);
  if (unit == "hz") return units::khz(v * 1e-3);
  throw ConfigError(field + ": unknown frequency unit '" + m[2].str() + "'");
}

double parse_angle(const std::string& text, const std::string& field) {
  std::string s = lower(trim(text));
  const auto p = s.find("pi");
  if (p == std::string::npos) return to_number(s, field);
  const std::string head = trim(s.substr(0, p));
  std::string tail = trim(s.substr(p + 2));
  double factor = head.empty() ? 1.0 : head == "-" ? -1.0 : to_number(head, field);
  if (!tail.empty()) {
    if (tail[0] != '/') throw ConfigError(field + ": cannot parse angle '" + text + "'");
    const double d = to_number(trim(tail.substr(1)), field);
    if (d == 0.0) throw ConfigError(field + ": division by zero in '" + text + "'");
    factor /= d;
  }
  return factor * kPi;
}

std::vector<double> parse_list(const std::string& text, const std::string& field) {
  const std::string s = trim(text);
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::size_t start = 0;
    while (true) {
      const auto c = s.find(':', start);
      parts.push_back(to_number(trim(s.substr(start, c - start)), field));
      if (c == std::string::npos) break;
      start = c + 1;
    }
    if (parts.size() > 3) throw ConfigError(field + ": range is lo:hi or lo:hi:step");
    const double step = parts.size() == 3 ? parts[2] : 1.0;
    if (!(step > 0.0) || parts[1] < parts[0]) throw ConfigError(field + ": empty or invalid range '" + text + "'");
    const auto n = static_cast<long>(std::floor((parts[1] - parts[0]) / step + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(parts[0] + step * static_cast<double>(i));
    return out;
  }
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto c = s.find(',', start);
    const std::string item = trim(s.substr(start, c == std::string::npos ? std::string::npos : c - start));
    if (item.empty()) throw ConfigError(field + ": empty list item in '" + text + "'");
    out.push_back(to_number(item, field));
    if (c == std::string::npos) break;
    start = c + 1;
  }
  return out;
}

GateSpec named_gate(const std::string& name) {
  const std::string n = lower(name);
  if (n == "s") return gates::S();
  if (n == "t") return gates::T();
  if (n == "sqrth") return gates::SqrtH();
  if (n == "h") return gates::H();
  if (n == "x") return {kPi / 2, 0.0, kPi};
  throw ConfigError("gate: unknown gate '" + name + "' (s, t, sqrth, h, x)");
}

std::vector<ConfigEntry> read_config(std::istream& in, const std::string& source) {
  std::vector<ConfigEntry> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    const std::string body = trim(line.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source + ":" + std::to_string(number) + ": expected 'key = value'");
    ConfigEntry e{number, trim(body.substr(0, eq)), trim(body.substr(eq + 1))};
    if (e.key.empty() || e.key[0] == '-')
      throw ConfigError(source + ":" + std::to_string(number) + ": bad key '" + e.key + "'");
    if (e.value.empty())
      throw ConfigError(source + ":" + std::to_string(number) + ": missing value for '" + e.key + "'");
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ConfigEntry> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  return read_config(in, path);
}

}  // namespace hqc::cli
