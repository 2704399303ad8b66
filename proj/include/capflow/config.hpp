#pragma once

#include <map>
#include <optional>
#include <string>

#include "capflow/grid.hpp"
#include "capflow/stepper.hpp"

namespace capflow {

/// Flat key=value configuration ('#' starts a comment). Missing or malformed
/// keys raise errors naming the offending key.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_text(const std::string& text);

  bool has(const std::string& key) const { return kv_.count(key) > 0; }
  std::string get_str(const std::string& key) const;
  std::string get_str(const std::string& key, const std::string& fallback) const;
  double get_num(const std::string& key) const;
  double get_num(const std::string& key, double fallback) const;
  long get_int(const std::string& key) const;
  long get_int(const std::string& key, long fallback) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }
  const std::string& text() const { return raw_; }

 private:
  std::map<std::string, std::string> kv_;
  std::string raw_;
};

/// One simulation setup loaded from a config: grid.*, params.*, init.*,
/// time.*, output.dir.
struct LoadedProblem {
  SimConfig sim;
  GridFn f0;
  std::string output_dir;
};
LoadedProblem load_problem(const Config& cfg);

/// Builds the initial profile from init.kind in {gaussian, cosine, file}.
GridFn build_initial(const Config& cfg, const Grid& grid);

}  // namespace capflow
