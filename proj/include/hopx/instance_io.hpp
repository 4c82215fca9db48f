#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>

#include "hopx/prox_function.hpp"
#include "hopx/types.hpp"

namespace hopx {

// Malformed instance text; the message carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

// Text serialization of a problem instance. Layout:
//   hopx-instance v1
//   kind: quadratic|l1|linear|point
//   p: <decimal>            sigma: <decimal>            n: <integer>
//   seed: <integer>         (optional, recorded by the generator)
//   c:                      one line of n decimals
//   A: / b: / a:            kind-specific blocks (A spans n lines)
// All decimals use 17 significant digits, so parse ∘ serialize is the
// identity on the underlying doubles.
struct InstanceFile {
  std::string kind;
  double p = 2.0;
  double sigma = 1.0;
  Index n = 0;
  std::int64_t seed = -1;  // < 0 means "not recorded"
  Vector c;
  Matrix A;  // quadratic
  Vector b;  // quadratic, point
  Vector a;  // linear

  void validate() const;  // throws std::invalid_argument on bad combinations
};

std::string serialize_instance(const InstanceFile& inst);
InstanceFile parse_instance(std::istream& in);
InstanceFile parse_instance_string(const std::string& text);
InstanceFile load_instance(const std::string& path);
void save_instance(const InstanceFile& inst, const std::string& path);

// Builds the catalog function the instance describes.
std::unique_ptr<ProxFunction> make_function(const InstanceFile& inst);

// CSV with header iter,lambda_norm,t_k,sigma_k,objective,kkt_residual,
// elapsed_ms and one row per trace record. elapsed_ms is written as an
// integer millisecond count so that repeated runs of fast solves are
// byte-identical.
void write_trace_csv(std::ostream& out, const SolveReport& report);
void save_trace_csv(const SolveReport& report, const std::string& path);

// Whitespace-separated doubles, any line structure (used by --lambda0 file:).
Vector load_vector(const std::string& path);

// 17-significant-digit decimal, the round-trip-exact format used throughout.
std::string format_double(double v);

}  // namespace hopx
