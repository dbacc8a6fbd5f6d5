#include "ptloc/report.hpp"

#include <ostream>

namespace ptloc {

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "FAIL";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

void Report::pass(std::string name) { items.push_back({std::move(name), Status::Pass, {}}); }

void Report::fail(std::string name, std::string witness) {
  items.push_back({std::move(name), Status::Fail, std::move(witness)});
}

void Report::inconclusive(std::string name, std::string witness) {
  items.push_back({std::move(name), Status::Inconclusive, std::move(witness)});
}

void Report::add(CheckResult r) { items.push_back(std::move(r)); }

void Report::merge(const Report& other) {
  for (const auto& it : other.items) {
    CheckResult r = it;
    if (!other.title.empty()) r.name = other.title + ": " + r.name;
    items.push_back(std::move(r));
  }
  for (const auto& line : other.info)
    info.push_back(other.title.empty() ? line : other.title + ": " + line);
}

bool Report::all_pass() const {
  for (const auto& it : items)
    if (it.status != Status::Pass) return false;
  return true;
}

bool Report::any_fail() const {
  for (const auto& it : items)
    if (it.status == Status::Fail) return true;
  return false;
}

bool Report::any_inconclusive() const {
  for (const auto& it : items)
    if (it.status == Status::Inconclusive) return true;
  return false;
}

Status Report::overall() const {
  if (any_fail()) return Status::Fail;
  if (any_inconclusive()) return Status::Inconclusive;
  return Status::Pass;
}

void Report::print_text(std::ostream& os) const {
  if (!title.empty()) os << "== " << title << " ==\n";
  for (const auto& line : info) os << "  " << line << "\n";
  for (const auto& it : items) {
    os << "  [" << status_name(it.status) << "] " << it.name;
    if (!it.witness.empty()) os << " -- " << it.witness;
    os << "\n";
  }
}

namespace {
std::string escape(const std::string& s) {
  std::string r;
  for (char c : s) {
    if (c == '"' || c == '\\') r += '\\';
    if (c == '\n') {
      r += "\\n";
      continue;
    }
    r += c;
  }
  return r;
}
}  // namespace

void Report::print_structured(std::ostream& os) const {
  os << "{\"title\":\"" << escape(title) << "\",\"info\":[";
  for (std::size_t i = 0; i < info.size(); ++i) {
    if (i) os << ",";
    os << "\"" << escape(info[i]) << "\"";
  }
  os << "],\"checks\":[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) os << ",";
    os << "{\"name\":\"" << escape(items[i].name) << "\",\"status\":\""
       << status_name(items[i].status) << "\",\"witness\":\"" << escape(items[i].witness) << "\"}";
  }
  os << "]}\n";
}

}  // namespace ptloc
