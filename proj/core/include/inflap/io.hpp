#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "inflap/field.hpp"
#include "inflap/solver.hpp"
#include "inflap/verify.hpp"

namespace inflap {

/// Shortest decimal form that round-trips a double (up to 17 significant
/// digits).
std::string format_double(double v);

/// Writes a field as text: header lines `# dim=`, `# h=`, `# bounds=`, then
/// one row per node in row-major order, `i,x,value` (1D) or
/// `i,j,x,y,value` (2D). Serialization round-trips exactly.
void write_field(const ScalarField& f, const std::filesystem::path& path);

/// Parses a field file written by write_field, rebuilding the domain from
/// the header. Throws FormatError naming the offending line, or IoError when
/// the file cannot be opened.
ScalarField read_field(const std::filesystem::path& path);

/// Ordered key=value report, one datum per line. Key order is insertion
/// order, so identical runs serialize byte-identically.
class Report {
 public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, const char* value);
  void add(const std::string& key, double value);
  void add(const std::string& key, std::int64_t value);
  void add(const std::string& key, bool value);

  const std::vector<std::pair<std::string, std::string>>& items() const {
    return items_;
  }
  std::string to_string() const;

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

void write_report(const Report& r, const std::filesystem::path& path);

/// Canonical report fragments. Timing is run-dependent and deliberately not
/// serialized, keeping command outputs reproducible.
void append_report(Report& r, const SolveReport& s, const std::string& prefix = "");
void append_report(Report& r, const CheckResult& c, const std::string& prefix = "");
void append_report(Report& r, const JensenGapResult& g, const std::string& prefix = "");
void append_report(Report& r, const std::vector<ConvergenceRow>& rows);

}  // namespace inflap
