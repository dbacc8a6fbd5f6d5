#ifndef PTLOC_CLI_HPP
#define PTLOC_CLI_HPP

#include <iosfwd>
#include <string>

#include "ptloc/report.hpp"

namespace ptloc {

// exit codes: 0 all pass, 1 check failure, 2 parse/config error,
// 3 inconclusive outcomes only
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitInconclusive = 3;

struct RunConfig {
  std::int64_t prime = 0;       // 0: taken from the input file
  std::int32_t truncation = 0;  // 0: taken from the input file
  std::int32_t max_word_len = 4;
  std::int64_t budget = 2'000'000;
  bool structured = false;
};

int cmd_check(const std::string& path, const RunConfig& cfg, std::ostream& os);
int cmd_fusion(const std::string& path, const RunConfig& cfg, std::ostream& os);
int cmd_roundtrip(const std::string& path, const RunConfig& cfg, std::ostream& os);
int cmd_rebuild(const std::string& path, const std::string& out_path, const RunConfig& cfg,
                std::ostream& os);
int cmd_gen(const std::string& which, const std::string& out_dir, const RunConfig& cfg,
            std::ostream& os);

int run_cli(int argc, const char* const* argv, std::ostream& os);

}  // namespace ptloc

#endif
