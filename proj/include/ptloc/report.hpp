#ifndef PTLOC_REPORT_HPP
#define PTLOC_REPORT_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptloc {

class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Status { Pass, Fail, Inconclusive };

const char* status_name(Status s);

struct CheckResult {
  std::string name;
  Status status = Status::Pass;
  std::string witness;  // empty on pass
};

// Outcome of one check suite: a flat list of named results plus free-form
// info lines (counts, tables) that go into the printed report verbatim.
struct Report {
  std::string title;
  std::vector<CheckResult> items;
  std::vector<std::string> info;

  void pass(std::string name);
  void fail(std::string name, std::string witness);
  void inconclusive(std::string name, std::string witness);
  void add(CheckResult r);
  void merge(const Report& other);  // items prefixed with other.title

  bool all_pass() const;
  bool any_fail() const;
  bool any_inconclusive() const;
  Status overall() const;

  void print_text(std::ostream& os) const;
  void print_structured(std::ostream& os) const;  // stable machine-readable form
};

}  // namespace ptloc

#endif
