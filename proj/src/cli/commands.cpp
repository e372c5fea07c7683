#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "tlk/cell.hpp"
#include "tlk/cli.hpp"
#include "tlk/jm.hpp"
#include "tlk/recoupling.hpp"
#include "tlk/serialize.hpp"
#include "tlk/twist.hpp"

namespace tlk::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kComputation = 3, kIo = 4 };

struct Config {
  int k = 2;
  int i = 1;
  int m = 1;
  int mmin = 1;
  int mmax = 200;
  long dmax = 100;
  std::size_t grid = 4096;
  std::string format;
  std::string cache_dir;
  bool no_cache = false;
  std::optional<int> base_writhe;
  std::optional<int> writhe_per_twist;
  bool normalize_unknot = false;
  std::string tangle;
  std::string poly;
  std::string powers;
};

struct Io {
  std::ostream& out;
  std::ostream& err;
};

class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string seq_string(const Sequence& s) {
  std::string r = "(";
  for (std::size_t j = 0; j < s.size(); ++j) r += (j ? "," : "") + std::to_string(s[j]);
  return r + ")";
}

std::string seq_csv(const Sequence& s) {
  std::string r;
  for (std::size_t j = 0; j < s.size(); ++j) r += (j ? " " : "") + std::to_string(s[j]);
  return r;
}

void require_format(const Config& c, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (c.format == f) return;
  std::string list;
  for (const char* f : allowed) list += (list.empty() ? "" : ", ") + std::string(f);
  throw CLI::ValidationError("--format", "'" + c.format + "' is not one of: " + list);
}

void require_shape(const Config& c) {
  if (c.k < 1 || c.i < 1) throw std::invalid_argument("--k and --i must be positive");
}

UnknotNormalization normalization(const Config& c) {
  return c.normalize_unknot ? UnknotNormalization::One : UnknotNormalization::Raw;
}

std::string default_tangle(int k) {
  std::string t;
  for (int j = 1; j < k; ++j) t += (j > 1 ? " s" : "s") + std::to_string(j);
  return t;
}

TwistFamily family_for(const Config& c, const std::string& text) {
  const TangleExpr e = parse_tangle(text);
  const int strands = strand_count(e, c.k);
  if (strands != c.k) throw std::invalid_argument("tangle has " + std::to_string(strands) + " strands but --k is " +
                                                  std::to_string(c.k));
  if (const auto w = as_braid_word(e, strands)) return braid_twist_family(*w, c.i, c.base_writhe, c.writhe_per_twist);
  if (!c.base_writhe)
    throw std::invalid_argument("--base-writhe is required for tangles that are not braid words");
  const SkeinElement t = evaluate_tangle(e, strands, c.i);
  return tangle_twist_family(t, strands, c.i, *c.base_writhe, c.writhe_per_twist.value_or(c.k * (c.k - 1)));
}

int cmd_basis(const Config& c, Io io) {
  require_shape(c);
  require_format(c, {"text", "json", "csv"});
  const auto ws = weights(c.k, c.i);
  if (c.format == "json") {
    json seqs = json::object();
    for (int w : ws) seqs[std::to_string(w)] = sequences(c.k, c.i, w);
    io.out << json{{"k", c.k}, {"i", c.i}, {"weights", ws}, {"sequences", seqs}}.dump(2) << '\n';
  } else if (c.format == "csv") {
    io.out << "weight,sequence\n";
    for (int w : ws)
      for (const auto& s : sequences(c.k, c.i, w)) io.out << w << ',' << seq_csv(s) << '\n';
  } else {
    io.out << "weights:";
    for (int w : ws) io.out << ' ' << w;
    io.out << '\n';
    std::size_t dim = 0;
    for (int w : ws) {
      const auto ss = sequences(c.k, c.i, w);
      dim += ss.size() * ss.size();
      io.out << "weight " << w << " (" << ss.size() << "):";
      for (const auto& s : ss) io.out << ' ' << seq_string(s);
      io.out << '\n';
    }
    io.out << "dimension: " << dim << '\n';
  }
  return kOk;
}

int cmd_gram(const Config& c, Io io) {
  require_shape(c);
  require_format(c, {"text", "json"});
  RationalFn det(1);
  json entries = json::array();
  std::ostringstream text;
  for (int w : weights(c.k, c.i)) {
    const auto ss = sequences(c.k, c.i, w);
    for (const auto& s : ss)
      for (const auto& t : ss) {
        const CellElement g = CellElement::basis(c.k, c.i, s, t);
        const RationalFn v = cell_inner(g, g);
        det *= v;
        entries.push_back({{"s", s}, {"t", t}, {"value", to_json(v)}});
        text << seq_string(s) << ' ' << seq_string(t) << ' ' << v.to_string() << '\n';
      }
  }
  if (c.format == "json") {
    io.out << json{{"k", c.k}, {"i", c.i}, {"diagonal", entries}, {"determinant", to_json(det)}}.dump(2) << '\n';
  } else {
    io.out << text.str() << "determinant " << det.to_string() << '\n';
  }
  return kOk;
}

int report_checks(const Config& c, const std::vector<CheckResult>& rs, Io io) {
  bool ok = true;
  for (const auto& r : rs) ok = ok && r.pass;
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& r : rs) arr.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    io.out << json{{"k", c.k}, {"i", c.i}, {"checks", arr}, {"pass", ok}}.dump(2) << '\n';
  } else {
    io.out << format_report(c.k, c.i, rs);
  }
  return ok ? kOk : kCheckFailed;
}

int cmd_verify_cell(const Config& c, Io io) {
  require_shape(c);
  require_format(c, {"text", "json"});
  return report_checks(c, verify_cell_datum(c.k, c.i), io);
}

int cmd_jm(const Config& c, Io io) {
  require_shape(c);
  require_format(c, {"text", "json", "csv"});
  const auto seqs = all_sequences(c.k, c.i);
  const auto checks = c.k >= 2 ? jm_checks(c.k, c.i) : std::vector<CheckResult>{};
  if (c.format == "json") {
    json rows = json::array();
    for (const auto& s : seqs) {
      json ev = json::array();
      for (int j = 2; j <= c.k; ++j) ev.push_back(to_json(jm_eigenvalue(s, j, c.i)));
      rows.push_back({{"sequence", s}, {"eigenvalues", ev}});
    }
    json arr = json::array();
    bool ok = true;
    for (const auto& r : checks) {
      arr.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
      ok = ok && r.pass;
    }
    io.out << json{{"k", c.k}, {"i", c.i}, {"spectrum", rows}, {"checks", arr}}.dump(2) << '\n';
    return ok ? kOk : kCheckFailed;
  }
  if (c.format == "csv") {
    io.out << "sequence,j,eigenvalue\n";
    for (const auto& s : seqs)
      for (int j = 2; j <= c.k; ++j) io.out << seq_csv(s) << ',' << j << ',' << jm_eigenvalue(s, j, c.i).to_string() << '\n';
    return kOk;
  }
  for (const auto& s : seqs) {
    io.out << seq_string(s);
    for (int j = 2; j <= c.k; ++j) io.out << "  L" << j << "=" << jm_eigenvalue(s, j, c.i).to_string();
    io.out << '\n';
  }
  return report_checks(c, checks, io);
}

int cmd_idempotents(const Config& c, Io io) {
  require_shape(c);
  require_format(c, {"text", "json"});
  std::vector<CheckResult> checks;
  CellElement total(c.k, c.i);
  json zs = json::array();
  std::ostringstream text;
  for (int w : weights(c.k, c.i)) {
    const CellElement z = central_idempotent(w, c.k, c.i);
    total += z;
    bool central = true;
    for (int v : weights(c.k, c.i))
      for (const auto& s : sequences(c.k, c.i, v))
        for (const auto& t : sequences(c.k, c.i, v)) {
          const CellElement g = CellElement::basis(c.k, c.i, s, t);
          central = central && cell_mul(z, g) == cell_mul(g, z);
        }
    checks.push_back({"z" + std::to_string(w) + "-idempotent", cell_mul(z, z) == z, ""});
    checks.push_back({"z" + std::to_string(w) + "-central", central, ""});
    zs.push_back({{"weight", w}, {"element", to_json(z)}});
    text << "z_" << w << " =";
    const char* sep = " ";
    for (const auto& [key, coeff] : z.terms()) {
      text << sep << coeff.to_string() << "*G" << seq_string(key.first);
      sep = " + ";
    }
    text << '\n';
  }
  checks.push_back({"sum-is-identity", total == CellElement::identity(c.k, c.i), ""});
  int matched = 0, count = 0;
  for (const auto& t : all_sequences(c.k, c.i)) {
    ++count;
    if (c.k < 2 || ft_interpolation(t, c.k, c.i) == CellElement::basis(c.k, c.i, t, t)) ++matched;
  }
  checks.push_back({"ft-interpolation", matched == count, std::to_string(matched) + "/" + std::to_string(count)});
  if (c.format == "json") {
    bool ok = true;
    json arr = json::array();
    for (const auto& r : checks) {
      arr.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
      ok = ok && r.pass;
    }
    io.out << json{{"k", c.k}, {"i", c.i}, {"idempotents", zs}, {"checks", arr}}.dump(2) << '\n';
    return ok ? kOk : kCheckFailed;
  }
  io.out << text.str();
  return report_checks(c, checks, io);
}

std::vector<int> parse_powers(const std::string& text, int k) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw std::invalid_argument("--powers: '" + item + "' is not an integer");
    out.push_back(v);
  }
  if (static_cast<int>(out.size()) != k - 1)
    throw std::invalid_argument("--powers needs " + std::to_string(k - 1) + " comma-separated entries");
  return out;
}

int cmd_pair_power(const Config& c, Io io) {
  require_shape(c);
  require_format(c, {"text", "json"});
  if (c.k < 2) throw std::invalid_argument("pair-power needs --k at least 2");
  const TangleExpr e = parse_tangle(c.tangle.empty() ? default_tangle(c.k) : c.tangle);
  const int strands = strand_count(e, c.k);
  if (strands != c.k) throw std::invalid_argument("tangle strand count does not match --k");
  const SkeinElement t = evaluate_tangle(e, strands, c.i);
  const RecursiveTangle r = c.powers.empty() ? full_twist(c.k, c.i) : jm_product(parse_powers(c.powers, c.k), c.k, c.i);
  const RationalFn v = pair_power(r, from_skein(t.reflected(), c.k, c.i), c.m);
  if (c.format == "json")
    io.out << json{{"k", c.k}, {"i", c.i}, {"m", c.m}, {"tangle", to_string(e)}, {"value", to_json(v)}}.dump(2) << '\n';
  else
    io.out << v.to_string() << '\n';
  return kOk;
}

int cmd_jones_twist(const Config& c, Io io) {
  require_shape(c);
  require_format(c, {"text", "json", "csv"});
  if (c.m < 0) throw std::invalid_argument("--m must be non-negative");
  const TwistFamily fam = family_for(c, c.tangle.empty() ? default_tangle(c.k) : c.tangle);
  const LaurentPoly j = colored_jones_twist(fam, c.m, normalization(c));
  if (c.format == "json")
    io.out << json{{"k", c.k}, {"i", c.i}, {"m", c.m}, {"writhe", fam.writhe(c.m)}, {"family", to_json(fam)},
                   {"value", to_json(j)}}
                  .dump(2)
           << '\n';
  else if (c.format == "csv")
    io.out << "m,value\n" << c.m << ',' << j.to_string() << '\n';
  else
    io.out << j.to_string() << '\n';
  return kOk;
}

void print_mahler(const char* label, const MahlerResult& r, std::ostream& out) {
  out << label << ' ' << format_double(r.value) << " method=" << r.method
      << " error_estimate=" << format_double(r.error_estimate) << '\n';
}

int cmd_mahler(const Config& c, Io io) {
  require_format(c, {"text", "json"});
  if (c.poly.empty()) throw std::invalid_argument("--poly is required");
  const BivariatePoly f = parse_polynomial(c.poly);
  if (f.is_zero()) throw std::domain_error("the Mahler measure of 0 is undefined");
  MahlerResult main, check;
  bool has_a = false, has_z = f.depends_on_z();
  for (const auto& [key, coeff] : f.terms()) has_a = has_a || key.first != 0;
  if (has_a && has_z) {
    main = mahler_2var(f, c.grid);
    check = mahler_2var_quadrature(f, c.grid);
  } else {
    const LaurentPoly p = has_z ? f.substitute(1) : f.substitute(0);
    main = mahler_1var(p);
    check = mahler_1var_quadrature(p);
  }
  if (c.format == "json") {
    auto res = [](const MahlerResult& r) {
      return json{{"value", format_double(r.value)}, {"method", r.method},
                  {"error_estimate", format_double(r.error_estimate)}, {"samples", r.samples}};
    };
    io.out << json{{"poly", f.to_string()}, {"result", res(main)}, {"cross_check", res(check)},
                   {"difference", format_double(std::abs(main.value - check.value))}}
                  .dump(2)
           << '\n';
  } else {
    print_mahler("M", main, io.out);
    print_mahler("cross-check", check, io.out);
    io.out << "difference " << format_double(std::abs(main.value - check.value)) << '\n';
  }
  return kOk;
}

int cmd_lawton(const Config& c, Io io) {
  require_format(c, {"csv", "json"});
  if (c.poly.empty()) throw std::invalid_argument("--poly is required");
  if (c.dmax < 1) throw std::invalid_argument("--dmax must be positive");
  const BivariatePoly f = parse_polynomial(c.poly);
  const LawtonReport r = lawton_sequence(f, c.dmax, c.grid);
  if (c.format == "json") {
    json rows = json::array();
    for (const auto& [d, v] : r.values) rows.push_back({{"d", d}, {"value", format_double(v)}});
    io.out << json{{"poly", f.to_string()}, {"values", rows}, {"limit", format_double(r.limit)},
                   {"tail_deviation", format_double(r.tail_deviation)},
                   {"tail_cauchy", format_double(r.tail_cauchy)}}
                  .dump(2)
           << '\n';
  } else {
    io.out << lawton_csv(r);
  }
  io.err << "limit " << format_double(r.limit) << " tail_deviation " << format_double(r.tail_deviation)
         << " tail_cauchy " << format_double(r.tail_cauchy) << '\n';
  return kOk;
}

int cmd_twist_converge(const Config& c, Io io) {
  require_shape(c);
  require_format(c, {"csv", "json"});
  if (c.k < 2) throw std::invalid_argument("twist-converge needs --k at least 2");
  if (c.mmin < 1 || c.mmax < c.mmin) throw std::invalid_argument("need 1 <= --mmin <= --mmax");
  const TwistFamily fam = family_for(c, c.tangle.empty() ? default_tangle(c.k) : c.tangle);
  const TwistConvergence t = twist_convergence_range(fam, c.mmin, c.mmax, c.grid, normalization(c));
  double max_delta = 0;
  for (const auto& row : t.rows)
    if (!std::isnan(row.delta_prev)) max_delta = std::max(max_delta, std::abs(row.delta_prev));
  const double final_dev = t.deviations.empty() ? std::nan("") : t.deviations.back().second;
  if (c.format == "json") {
    json rows = json::array();
    for (const auto& row : t.rows)
      rows.push_back({{"m", row.m}, {"value", format_double(row.value)}, {"delta_prev", format_double(row.delta_prev)}});
    io.out << json{{"k", c.k}, {"i", c.i}, {"family", to_json(fam)}, {"rows", rows},
                   {"limit", format_double(t.limit)}, {"limit_error_estimate", format_double(t.limit_error_estimate)}}
                  .dump(2)
           << '\n';
  } else {
    io.out << convergence_csv(t);
  }
  io.err << "limit " << format_double(t.limit) << " (+/- " << format_double(t.limit_error_estimate) << ")"
         << " max_delta " << format_double(max_delta) << " final_deviation " << format_double(final_dev) << '\n';
  return kOk;
}

std::optional<fs::path> default_cache_dir() {
  if (const char* d = std::getenv("TLK_CACHE_DIR"); d && *d) return fs::path(d);
  if (const char* d = std::getenv("XDG_CACHE_HOME"); d && *d) return fs::path(d) / "tlk";
  if (const char* d = std::getenv("HOME"); d && *d) return fs::path(d) / ".cache" / "tlk";
  return std::nullopt;
}

// Installs the projector cache for the lifetime of one command.
class CacheScope {
 public:
  CacheScope(const Config& c, std::ostream& err) : err_(err) {
    if (c.no_cache) return;
    std::optional<fs::path> dir;
    const bool explicit_dir = !c.cache_dir.empty();
    dir = explicit_dir ? std::optional<fs::path>(c.cache_dir) : default_cache_dir();
    if (!dir) return;
    try {
      cache_.emplace(*dir);
    } catch (const std::exception& e) {
      if (explicit_dir) throw IoError(e.what());
      err_ << "warning: " << e.what() << "; continuing without a projector cache\n";
      return;
    }
    set_projector_store({[this](int n) {
                           const int before = cache_->rejected();
                           auto f = cache_->get(n);
                           if (cache_->rejected() != before)
                             err_ << "warning: cache entry " << cache_->file_for(n).string()
                                  << " is unreadable or from another version; recomputing\n";
                           return f;
                         },
                         [this](int n, const SkeinElement& f) {
                           try {
                             cache_->put(n, f);
                           } catch (const std::exception& e) {
                             err_ << "warning: " << e.what() << '\n';
                           }
                         }});
  }
  ~CacheScope() {
    if (cache_) set_projector_store({});
  }
  CacheScope(const CacheScope&) = delete;
  CacheScope& operator=(const CacheScope&) = delete;

 private:
  std::ostream& err_;
  std::optional<ProjectorCache> cache_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Colored Temperley-Lieb algebras: cell bases, JM elements, twist families and Mahler measures", "tlk"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Print help for every subcommand and exit");

  using Handler = std::function<int(const Config&, Io)>;
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto shape = [&](CLI::App* s, int default_k) {
    c.k = default_k;
    s->add_option("--k", c.k, "number of colored strands")->capture_default_str();
    s->add_option("--i", c.i, "color of each strand")->capture_default_str();
  };
  auto common = [&](CLI::App* s, const char* default_format) {
    s->add_option("--format", c.format, "text, csv or json")->default_str(default_format);
    s->add_option("--cache-dir", c.cache_dir, "projector cache directory");
    s->add_flag("--no-cache", c.no_cache, "do not read or write the projector cache");
    s->add_option("--grid", c.grid, "quadrature points for two-variable measures")->check(CLI::PositiveNumber);
  };
  auto twist_opts = [&](CLI::App* s) {
    s->add_option("--tangle", c.tangle, "tangle expression, e.g. \"s1 s1 s1\"");
    s->add_option("--base-writhe", c.base_writhe, "writhe of the tangle before twisting");
    s->add_option("--writhe-per-twist", c.writhe_per_twist, "writhe added by each full twist (default k(k-1))");
    s->add_flag("--normalize-unknot", c.normalize_unknot, "divide by the colored unknot so that J(unknot) = 1");
  };
  std::map<CLI::App*, std::string> default_formats;
  auto add = [&](const char* name, const char* help, const char* fmt, Handler h) {
    CLI::App* s = app.add_subcommand(name, help);
    common(s, fmt);
    default_formats[s] = fmt;
    commands.emplace_back(s, std::move(h));
    return s;
  };

  shape(add("basis", "weights and admissible sequences", "text", cmd_basis), 2);
  shape(add("gram", "Gram values of the graph basis and their product", "text", cmd_gram), 2);
  shape(add("verify-cell", "check the cell datum", "text", cmd_verify_cell), 2);
  shape(add("jm", "JM eigenvalues and checks", "text", cmd_jm), 2);
  shape(add("idempotents", "central idempotents and F_t interpolation", "text", cmd_idempotents), 2);
  {
    CLI::App* s = add("pair-power", "<R^m, T> for the full twist or a JM monomial R", "text", cmd_pair_power);
    shape(s, 2);
    s->add_option("--tangle", c.tangle, "tangle expression T");
    s->add_option("--m", c.m, "power of R")->check(CLI::NonNegativeNumber)->capture_default_str();
    s->add_option("--powers", c.powers, "exponents of L_2..L_k, comma separated (default: full twist)");
  }
  {
    CLI::App* s = add("jones-twist", "colored bracket of the closure with m full twists", "text", cmd_jones_twist);
    shape(s, 2);
    twist_opts(s);
    s->add_option("--m", c.m, "number of full twists")->capture_default_str();
  }
  {
    CLI::App* s = add("mahler", "Mahler measure of a polynomial in A and z", "text", cmd_mahler);
    s->add_option("--poly", c.poly, "polynomial, e.g. \"A^2 - A - 1\"")->required();
  }
  {
    CLI::App* s = add("lawton", "M(f(A, A^d)) for d = 1..dmax", "csv", cmd_lawton);
    s->add_option("--poly", c.poly, "polynomial in A and z")->required();
    s->add_option("--dmax", c.dmax, "largest d")->capture_default_str();
  }
  {
    CLI::App* s = add("twist-converge", "M(J_m) along a twist family and its two-variable limit", "csv",
                      cmd_twist_converge);
    shape(s, 2);
    twist_opts(s);
    s->add_option("--mmin", c.mmin, "first twist count")->capture_default_str();
    s->add_option("--mmax", c.mmax, "last twist count")->capture_default_str();
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  for (auto& [sub, handler] : commands) {
    if (!sub->parsed()) continue;
    if (c.format.empty()) c.format = default_formats[sub];
    try {
      CacheScope scope(c, err);
      return handler(c, {out, err});
    } catch (const CLI::ValidationError& e) {
      err << "error: " << e.what() << '\n';
      return kUsage;
    } catch (const IoError& e) {
      err << "error: " << e.what() << '\n';
      return kIo;
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << '\n';
      return kUsage;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kComputation;
    }
  }
  return kUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int j = 1; j < argc; ++j) args.emplace_back(argv[j]);
  return run(args, out, err);
}

}  // namespace tlk::cli
