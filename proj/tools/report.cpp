#include "report.hpp"

#include <cstdio>
#include <sstream>

namespace fimtool {

std::string fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Report::Report(std::string command) : command_(std::move(command)) {}

void Report::input(const std::string& name, std::string_view content) {
  inputs_[name] = "fnv1a64:" + fnv1a64(content);
}

void Report::bound(const std::string& key, Json value) { bounds_[key] = std::move(value); }

void Report::set(const std::string& key, Json value) { result_[key] = std::move(value); }

namespace {

std::string scalar(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void emit(std::ostream& out, const std::string& key, const Json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    out << pad << key << ":\n";
    for (const auto& [k, sub] : v.items()) emit(out, k, sub, indent + 2);
  } else if (v.is_array()) {
    out << pad << key << ": (" << v.size() << ")\n";
    for (const auto& item : v) {
      if (item.is_object()) {
        out << pad << "  -\n";
        for (const auto& [k, sub] : item.items()) emit(out, k, sub, indent + 4);
      } else {
        out << pad << "  - " << scalar(item) << "\n";
      }
    }
  } else {
    out << pad << key << ": " << scalar(v) << "\n";
  }
}

}  // namespace

std::string Report::render(bool json) const {
  if (json) {
    Json j;
    j["command"] = command_;
    j["inputs"] = inputs_;
    j["bounds"] = bounds_;
    j["result"] = result_;
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "command: " << command_ << "\n";
  for (const auto& [k, v] : inputs_.items()) out << "input " << k << ": " << scalar(v) << "\n";
  for (const auto& [k, v] : bounds_.items()) out << "bound " << k << ": " << scalar(v) << "\n";
  for (const auto& [k, v] : result_.items()) emit(out, k, v, 0);
  return out.str();
}

}  // namespace fimtool
