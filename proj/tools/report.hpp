#pragma once

// Run reports: command echo, input digests, bounds and results, rendered as
// plain text with a fixed field order or as JSON.

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"

namespace fimtool {

using Json = nlohmann::ordered_json;

std::string fnv1a64(std::string_view data);

class Report {
 public:
  explicit Report(std::string command);

  void input(const std::string& name, std::string_view content);
  void bound(const std::string& key, Json value);
  void set(const std::string& key, Json value);
  Json& result() { return result_; }

  std::string render(bool json) const;

 private:
  std::string command_;
  Json inputs_ = Json::object();
  Json bounds_ = Json::object();
  Json result_ = Json::object();
};

}  // namespace fimtool
