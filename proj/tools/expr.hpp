#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include "entgeo/comgeo.hpp"
#include "entgeo/qstate.hpp"

namespace entgeo::cli {

/// Expression syntax error; `column` is 1-based into the expression text.
class ExprError : public std::runtime_error {
 public:
  ExprError(const std::string& text, std::size_t column, const std::string& msg);
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// Input file could not be read; reported like a syntax error.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GptState {
  std::string model_a_name;
  std::string model_b_name;
  ComModel model_a;
  ComModel model_b;
  BilinearState phi;
};

using ParsedState = std::variant<DensityMatrix, GptState>;

// State expressions:
//   bell:phi+ | bell:phi- | bell:psi+ | bell:psi-
//   werner:<p>
//   mixed:<a>x<b>                       maximally mixed
//   random:<a>x<b>[:rank=<r>][:seed=<s>]  Ginibre mixed state (default full rank)
//   randpure:<a>x<b>[:seed=<s>]
//   file:<path>                         state JSON
//   prbox                               PR box on gbit (x) gbit
ParsedState parse_state(const std::string& text, std::uint64_t default_seed);

// Model expressions: classical:<n> | gbit | file:<path> (model JSON).
ComModel parse_model(const std::string& text);

/// Reads a whole file; throws FileError naming the path on failure.
std::string read_file(const std::string& path);

}  // namespace entgeo::cli
