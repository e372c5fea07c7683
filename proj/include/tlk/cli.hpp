// Command-line front end: tangle expressions, polynomial input, the
// projector cache and the subcommands of the `tlk` binary.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tlk/mahler.hpp"
#include "tlk/skein.hpp"

namespace tlk::cli {

/// A syntax or shape error located at a 1-based line and column.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& msg, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct TangleTerm {
  enum class Kind { Sigma, SigmaInverse, E, JonesWenzl, Twist, Group };
  Kind kind;
  int value = 0;  // generator index, projector size or twist count
  std::vector<TangleTerm> group;
  int line = 1;
  int column = 1;
};

/// Terms in reading order; the first term is the lowest in the picture.
struct TangleExpr {
  std::vector<TangleTerm> terms;
};

/// expr := term (term)*
/// term := 's' INT ('^-1')? | 'e(' INT ')' | 'jw(' INT ')' | 'twist(' INT ')' | '(' expr ')'
TangleExpr parse_tangle(std::string_view text);
/// Canonical text; parses back to an equal expression.
std::string to_string(const TangleExpr& e);

/// Strand count: fixed by jw(n) terms when present (all must agree),
/// otherwise `hint`, otherwise one more than the largest generator index.
int strand_count(const TangleExpr& e, std::optional<int> hint = {});

/// The element of TL_n drawn by the expression on n = strands strands, each
/// cabled by `color` and projected into TL_(n,color). jw(n) needs color 1.
SkeinElement evaluate_tangle(const TangleExpr& e, int strands, int color = 1);
/// The braid word when the expression has only s and twist terms.
std::optional<BraidWord> as_braid_word(const TangleExpr& e, int strands);

/// Polynomials in A and z: "A^2 - A - 1", "1 + A + z", "3/2*A^-1*z^2".
/// A JSON term list is also accepted: [[a, num, den], ...] for one variable
/// or [[a, b, num, den], ...] for two.
BivariatePoly parse_polynomial(std::string_view text);

/// Versioned on-disk store of Jones-Wenzl projectors, one file per n.
/// Unreadable or mismatched entries are recomputed and overwritten; writes
/// go to a temporary file that is renamed into place.
class ProjectorCache {
 public:
  static constexpr int kFormatVersion = 1;

  explicit ProjectorCache(std::filesystem::path dir);
  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path file_for(int n) const;

  std::optional<SkeinElement> get(int n);
  void put(int n, const SkeinElement& f);
  /// Wire into jones_wenzl().
  void install();

  int hits() const { return hits_; }
  int misses() const { return misses_; }
  int rejected() const { return rejected_; }

 private:
  std::filesystem::path dir_;
  int hits_ = 0;
  int misses_ = 0;
  int rejected_ = 0;
};

/// Runs one command line; returns the exit status. Results go to `out`,
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tlk::cli
