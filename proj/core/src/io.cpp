#include "inflap/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace inflap {

std::string format_double(double v) {
  char buf[40];
  // Shortest representation that parses back to the same double.
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_field(const ScalarField& f, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("write_field: cannot open " + path.string());
  }
  const auto& dom = f.domain();
  out << "# dim=" << dom.dim() << "\n";
  out << "# h=" << format_double(dom.spacing()) << "\n";
  out << "# bounds=" << format_double(dom.bounds().lo[0]) << ","
      << format_double(dom.bounds().hi[0]);
  if (dom.dim() > 1) {
    out << "," << format_double(dom.bounds().lo[1]) << ","
        << format_double(dom.bounds().hi[1]);
  }
  out << "\n";
  for (std::int64_t n = 0; n < dom.node_count(); ++n) {
    const auto m = dom.multi_index(n);
    const auto x = dom.coord(n);
    out << m[0];
    if (dom.dim() > 1) out << "," << m[1];
    out << "," << format_double(x[0]);
    if (dom.dim() > 1) out << "," << format_double(x[1]);
    out << "," << format_double(f[n]) << "\n";
  }
  if (!out) {
    throw IoError("write_field: write failed on " + path.string());
  }
}

namespace {

[[noreturn]] void format_fail(const std::filesystem::path& path, int line,
                              const std::string& what) {
  std::ostringstream os;
  os << path.string() << ":" << line << ": " << what;
  throw FormatError(os.str());
}

std::vector<double> split_doubles(const std::string& s, bool& ok) {
  std::vector<double> out;
  ok = true;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t next = s.find(',', pos);
    const std::string tok =
        s.substr(pos, next == std::string::npos ? next : next - pos);
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') {
      ok = false;
      return out;
    }
    out.push_back(v);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace

ScalarField read_field(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("read_field: cannot open " + path.string());
  }
  std::string line;
  int lineno = 0;

  auto next_header = [&](const char* key) -> std::string {
    if (!std::getline(in, line)) format_fail(path, lineno + 1, "missing header");
    ++lineno;
    const std::string prefix = std::string("# ") + key + "=";
    if (line.rfind(prefix, 0) != 0) {
      format_fail(path, lineno, "expected header '" + prefix + "...'");
    }
    return line.substr(prefix.size());
  };

  const std::string dim_s = next_header("dim");
  int dim = 0;
  if (dim_s == "1") {
    dim = 1;
  } else if (dim_s == "2") {
    dim = 2;
  } else {
    format_fail(path, lineno, "dim must be 1 or 2, got '" + dim_s + "'");
  }

  bool ok = false;
  const std::string h_s = next_header("h");
  const auto h_v = split_doubles(h_s, ok);
  if (!ok || h_v.size() != 1) format_fail(path, lineno, "bad h value");
  const double h = h_v[0];

  const std::string bounds_s = next_header("bounds");
  const auto b_v = split_doubles(bounds_s, ok);
  if (!ok || b_v.size() != static_cast<std::size_t>(2 * dim)) {
    format_fail(path, lineno, "bounds must list 2*dim values");
  }
  Box bounds;
  bounds.lo[0] = b_v[0];
  bounds.hi[0] = b_v[1];
  if (dim > 1) {
    bounds.lo[1] = b_v[2];
    bounds.hi[1] = b_v[3];
  }

  LatticeDomain dom;
  try {
    dom = build_domain(bounds, h, dim);
  } catch (const Error& e) {
    format_fail(path, lineno, std::string("header does not describe a lattice: ") + e.what());
  }

  std::vector<double> values(static_cast<size_t>(dom.node_count()));
  const std::size_t fields = dim == 1 ? 3 : 5;
  std::int64_t row = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (row >= dom.node_count()) {
      format_fail(path, lineno, "more data rows than nodes");
    }
    const auto v = split_doubles(line, ok);
    if (!ok || v.size() != fields) {
      format_fail(path, lineno, "expected " + std::to_string(fields) +
                                    " comma-separated values");
    }
    const auto m = dom.multi_index(row);
    if (static_cast<std::int64_t>(v[0]) != m[0] ||
        (dim > 1 && static_cast<std::int64_t>(v[1]) != m[1])) {
      format_fail(path, lineno, "index out of row-major order");
    }
    const double value = v[fields - 1];
    if (!std::isfinite(value)) {
      format_fail(path, lineno, "non-finite value");
    }
    values[static_cast<size_t>(row)] = value;
    ++row;
  }
  if (row != dom.node_count()) {
    format_fail(path, lineno, "expected " + std::to_string(dom.node_count()) +
                                  " data rows, got " + std::to_string(row));
  }
  return ScalarField(dom, std::move(values));
}

void Report::add(const std::string& key, const std::string& value) {
  items_.emplace_back(key, value);
}
void Report::add(const std::string& key, const char* value) {
  items_.emplace_back(key, std::string(value));
}
void Report::add(const std::string& key, double value) {
  items_.emplace_back(key, format_double(value));
}
void Report::add(const std::string& key, std::int64_t value) {
  items_.emplace_back(key, std::to_string(value));
}
void Report::add(const std::string& key, bool value) {
  items_.emplace_back(key, value ? "true" : "false");
}

std::string Report::to_string() const {
  std::string out;
  for (const auto& [k, v] : items_) {
    out += k;
    out += '=';
    out += v;
    out += '\n';
  }
  return out;
}

void write_report(const Report& r, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("write_report: cannot open " + path.string());
  }
  out << r.to_string();
  if (!out) {
    throw IoError("write_report: write failed on " + path.string());
  }
}

void append_report(Report& r, const SolveReport& s, const std::string& prefix) {
  r.add(prefix + "converged", s.converged);
  r.add(prefix + "iterations", s.iterations);
  r.add(prefix + "update_sup", s.final_update);
  r.add(prefix + "residual_sup", s.residual_sup);
}

void append_report(Report& r, const CheckResult& c, const std::string& prefix) {
  r.add(prefix + "passed", c.passed);
  r.add(prefix + "slack", c.worst_slack);
  r.add(prefix + "tolerance", c.tolerance);
  r.add(prefix + "witness", c.witness.node);
  r.add(prefix + "witness_detail", c.witness.detail);
}

void append_report(Report& r, const JensenGapResult& g,
                   const std::string& prefix) {
  r.add(prefix + "gap", g.gap);
  r.add(prefix + "witness", g.witness);
}

void append_report(Report& r, const std::vector<ConvergenceRow>& rows) {
  r.add("levels", static_cast<std::int64_t>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::string p = "row." + std::to_string(k) + ".";
    r.add(p + "h", rows[k].h);
    r.add(p + "eps", rows[k].eps);
    r.add(p + "nodes", rows[k].nodes);
    r.add(p + "iterations", rows[k].iterations);
    r.add(p + "sup_error", rows[k].sup_error);
    r.add(p + "residual_sup", rows[k].residual_sup);
    r.add(p + "converged", rows[k].converged);
  }
}

}  // namespace inflap
