#pragma once

// Command-line front end. run() parses argv with CLI11, dispatches to one
// subcommand, writes the artifact (stdout or --out) and a run manifest, and
// maps library exceptions onto exit codes:
//   0 success, 1 domain error, 2 usage error, 3 resource cap or overflow.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "radixion/algebra.hpp"
#include "radixion/analysis.hpp"
#include "radixion/carry.hpp"
#include "radixion/emit.hpp"
#include "radixion/encoding.hpp"
#include "radixion/error.hpp"
#include "radixion/limits.hpp"
#include "radixion/numeration.hpp"
#include "radixion/parallel.hpp"
#include "radixion/tile.hpp"

#ifndef RADIXION_VERSION
#define RADIXION_VERSION "0.0.0"
#endif

namespace radixion::cli {

enum ExitCode : int { success = 0, domain_failure = 1, usage_failure = 2, resource_failure = 3 };

/// "2..8" or "2,4,8".
inline std::vector<std::size_t> parse_size_list(std::string_view text) {
  std::vector<std::size_t> out;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const auto lo = to_u64(parse_integer<BigInt>(text.substr(0, dots)));
    const auto hi = to_u64(parse_integer<BigInt>(text.substr(dots + 2)));
    if (hi < lo) throw parse_error("empty range '" + std::string(text) + "'");
    for (auto v = lo; v <= hi; ++v) out.push_back(static_cast<std::size_t>(v));
    return out;
  }
  for (auto part : split(text, ',')) {
    const BigInt v = parse_integer<BigInt>(part);
    if (v < 0) throw parse_error("negative value '" + std::string(part) + "'");
    out.push_back(static_cast<std::size_t>(to_u64(v)));
  }
  return out;
}

inline std::size_t parse_size(std::string_view text) {
  const BigInt v = parse_integer<BigInt>(text);
  if (v < 0) throw parse_error("negative value '" + std::string(text) + "'");
  return static_cast<std::size_t>(to_u64(v));
}

/// String-valued options of one CLI11 app, remembered by name.
class FlagSet {
 public:
  void option(CLI::App* app, const std::string& name, const std::string& help, std::string def = "", bool required = false) {
    auto& slot = values_[name];
    slot = def;
    defaults_[name] = std::move(def);
    auto* opt = app->add_option("--" + name, slot, help);
    if (required) opt->required();
    options_[name] = opt;
  }
  void flag(CLI::App* app, const std::string& name, const std::string& help) {
    options_[name] = app->add_flag("--" + name, switches_[name], help);
  }

  bool given(const std::string& name) const { return options_.at(name)->count() > 0; }
  bool on(const std::string& name) const { return switches_.at(name); }
  const std::string& operator[](const std::string& name) const { return values_.at(name); }
  bool has_value(const std::string& name) const { return !values_.at(name).empty(); }

  /// Every option with a value (given or defaulted) plus switches that are on.
  void normalized(std::map<std::string, std::string>& into) const {
    for (const auto& [k, v] : values_)
      if (!v.empty()) into[k] = v;
    for (const auto& [k, v] : switches_)
      if (v) into[k] = "true";
  }

 private:
  std::map<std::string, std::string> values_, defaults_;
  std::map<std::string, bool> switches_;
  std::map<std::string, CLI::Option*> options_;
};

/// What a subcommand produced: the main artifact plus side files.
struct Result {
  std::string body;
  std::vector<std::pair<std::string, std::string>> side_files;  // path, bytes
  bool uses_seed = false;
};

struct Context {
  const FlagSet& flags;
  const FlagSet& global;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::string format = "json";
  Limits limits;
};

namespace detail {

template <ExactInteger Int>
NumberSystem<Int> system_from(const Context& ctx) {
  auto poly = parse_polynomial<Int>(ctx.flags["poly"]);
  if (ctx.flags.has_value("digits")) {
    auto digits = parse_digits<Int>(ctx.flags["digits"], poly.degree());
    return NumberSystem<Int>::validate(std::move(poly), std::move(digits));
  }
  return NumberSystem<Int>::canonical(std::move(poly));
}

template <ExactInteger Int>
void require_fns(const NumberSystem<Int>& ns, const Limits& limits) {
  const auto v = is_fns(ns, limits);
  if (!v.is_fns) throw cycle_error(radixion::detail::encode_cycle(*v.witness_cycle));
}

template <ExactInteger Int>
Json system_json(const NumberSystem<Int>& ns) {
  Json j;
  j["poly"] = format_polynomial(ns.polynomial());
  j["digits"] = format_digits(ns.digits());
  j["basis"] = "power";
  Json w = Json::array();
  for (const auto& s : ns.polynomial().warnings()) w.push_back(s);
  j["warnings"] = w;
  return j;
}

inline std::string dump(const Json& j) { return dump_json(j) + "\n"; }

inline void require_format(const Context& ctx, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (ctx.format == f) return;
  throw parse_error("format '" + ctx.format + "' is not available for this subcommand");
}

inline Result cmd_expand(const Context& ctx) {
  require_format(ctx, {"json"});
  const auto ns = system_from<BigInt>(ctx);
  const auto x = parse_element<BigInt>(ctx.flags["element"], ns.degree());
  const Expansion e = expand_or_throw(ns, x);
  Json j;
  j["system"] = system_json(ns);
  j["element"] = json_element(x);
  j["digits"] = e.digits;
  j["length"] = e.length();
  return {dump(j), {}, false};
}

inline Result cmd_check_fns(const Context& ctx) {
  require_format(ctx, {"json"});
  const auto ns = system_from<BigInt>(ctx);
  const auto v = is_fns(ns, ctx.limits);
  Json j;
  j["system"] = system_json(ns);
  j["is_fns"] = v.is_fns;
  if (v.witness_cycle) {
    Json c = Json::array();
    for (const auto& e : *v.witness_cycle) c.push_back(json_element(e));
    j["witness_cycle"] = c;
  } else {
    j["witness_cycle"] = nullptr;
  }
  j["candidates_examined"] = v.candidates_examined;
  j["box"] = v.box;
  return {dump(j), {}, false};
}

inline Result cmd_carry(const Context& ctx) {
  require_format(ctx, {"json"});
  const auto ns = system_from<BigInt>(ctx);
  const CarryAutomaton<BigInt> aut(ns, ctx.limits);
  const auto rep = carry_constant(ns, aut);
  Json j;
  j["system"] = system_json(ns);
  j["states"] = rep.automaton_size;
  j["spectral_radius"] = json_number(rep.spectral_radius);
  j["eta2"] = json_number(rep.eta2);
  j["iterations"] = rep.iterations;
  Json set = Json::array();
  for (const auto& s : aut.carry_set().states) set.push_back(json_element(s));
  j["carry_set"] = set;
  Result r{dump(j), {}, false};
  if (ctx.flags.has_value("dump-automaton")) {
    std::ostringstream dot;
    write_dot(dot, aut);
    r.side_files.emplace_back(ctx.flags["dump-automaton"], dot.str());
  }
  return r;
}

inline Result cmd_census(const Context& ctx) {
  require_format(ctx, {"json"});
  const auto ns = system_from<Checked64>(ctx);
  require_fns(ns, ctx.limits);
  const auto mu = parse_size(ctx.flags["mu"]);
  const auto nu = parse_size(ctx.flags["nu"]);
  const auto rhos = parse_size_list(ctx.flags["rho"]);
  const double c = std::stod(ctx.flags["bound-constant"]);
  const auto eta = carry_constant(ns, ctx.limits);
  const double q = static_cast<double>(ns.base_norm());
  Json rows = Json::array();
  for (auto rho : rhos) {
    const auto count = carry_census(ns, mu, nu, rho, ctx.limits, ctx.threads);
    const double bound = c * std::pow(q, static_cast<double>(mu) - eta.eta2 * static_cast<double>(rho));
    Json row;
    row["rho"] = rho;
    row["count"] = count;
    row["bound"] = json_number(bound);
    row["within_bound"] = static_cast<double>(count) <= bound;
    rows.push_back(row);
  }
  Json j;
  j["system"] = system_json(ns);
  j["mu"] = mu;
  j["nu"] = nu;
  j["eta2"] = json_number(eta.eta2);
  j["bound_constant"] = json_number(c);
  j["rows"] = rows;
  return {dump(j), {}, false};
}

inline Result cmd_cns_carry(const Context& ctx) {
  require_format(ctx, {"json"});
  std::vector<std::pair<Json, MinimalPolynomial<BigInt>>> polys;
  if (ctx.flags.has_value("poly") == ctx.flags.has_value("family-m"))
    throw parse_error("cns-carry needs exactly one of --poly and --family-m");
  if (ctx.flags.has_value("poly")) {
    polys.emplace_back(nullptr, parse_polynomial<BigInt>(ctx.flags["poly"]));
  } else {
    for (auto m : parse_size_list(ctx.flags["family-m"])) polys.emplace_back(Json(m), gaussian_cns_family(m));
  }
  Json rows = Json::array();
  for (const auto& [m, poly] : polys) {
    const auto g = cns_collapsed(poly);
    Json row;
    if (!m.is_null()) row["m"] = m;
    row["poly"] = format_polynomial(poly);
    row["coefficient_condition"] = g.coefficient_condition;
    Json a = Json::array(), b = Json::array();
    for (const auto& v : g.alphas) a.push_back(json_integer(v));
    for (const auto& v : g.betas) b.push_back(json_integer(v));
    row["alphas"] = a;
    row["betas"] = b;
    row["lambda"] = json_number(g.lambda);
    row["eta_bound"] = json_number(g.eta_bound);
    if (poly.degree() <= 12) {
      const auto sub = spectral_radius(cns_subset_graph(poly).weights);
      row["subset_radius"] = json_number(sub.value);
      row["subset_within_collapsed"] = sub.value <= g.lambda + 1e-6;
    }
    if (ctx.flags.on("compare-automaton")) {
      const auto ns = NumberSystem<BigInt>::canonical(poly);
      const auto rep = carry_constant(ns, ctx.limits);
      row["automaton_eta2"] = json_number(rep.eta2);
      row["automaton_states"] = rep.automaton_size;
      row["automaton_dominates"] = rep.eta2 >= g.eta_bound;
    }
    rows.push_back(row);
  }
  Json j;
  j["rows"] = rows;
  return {dump(j), {}, false};
}

inline Result cmd_tile(const Context& ctx) {
  require_format(ctx, {"json"});
  const auto ns = system_from<BigInt>(ctx);
  require_fns(ns, ctx.limits);
  const auto depth = parse_size(ctx.flags["depth"]);
  const auto resolution = parse_size(ctx.flags["resolution"]);
  const auto samples = parse_size(ctx.flags["cover-samples"]);
  const Raster raster = rasterize_tile(ns, depth, resolution, ctx.limits, ctx.threads);
  const auto radii = tile_radii(ns, raster);
  Json j;
  j["system"] = system_json(ns);
  j["depth"] = depth;
  j["resolution"] = resolution;
  Json grid;
  grid["width"] = raster.width;
  grid["height"] = raster.height;
  grid["cells_per_unit"] = raster.cells_per_unit;
  grid["bbox"] = {json_number(raster.x0), json_number(raster.x1), json_number(raster.y0), json_number(raster.y1)};
  j["grid"] = grid;
  j["occupied_cells"] = raster.occupied();
  j["area"] = json_number(raster_area(raster));
  j["unique_cover"] = json_number(unique_cover_fraction(raster, samples, ctx.seed));
  const auto span = raster.occupied_x_span();
  j["occupied_x_span"] = {json_number(span.first), json_number(span.second)};
  j["r_plus_bound"] = json_number(radii.r_plus_bound);
  j["r_minus_estimate"] = json_number(radii.r_minus_estimate);
  Json per = Json::array();
  for (double v : radii.per_embedding) per.push_back(json_number(v));
  j["per_embedding"] = per;
  if (ctx.flags.has_value("boxdim")) {
    const auto bd = boundary_boxdim(ns, parse_size_list(ctx.flags["boxdim"]), parse_size(ctx.flags["boxdim-depth"]), ctx.limits,
                                    ctx.threads);
    Json b;
    b["depth"] = parse_size(ctx.flags["boxdim-depth"]);
    b["resolutions"] = bd.resolutions;
    Json scales = Json::array();
    for (double s : bd.scales) scales.push_back(json_number(s));
    b["scales"] = scales;
    b["boundary_cells"] = bd.counts;
    b["slope"] = json_number(bd.slope);
    b["fit_residual"] = json_number(bd.residual);
    j["boxdim"] = b;
  }
  Result r{dump(j), {}, true};
  if (ctx.flags.has_value("pgm")) {
    std::ostringstream pgm;
    write_pgm(pgm, raster);
    r.side_files.emplace_back(ctx.flags["pgm"], pgm.str());
  }
  if (ctx.flags.has_value("csv")) {
    const auto space = ctx.flags["space"] == "embedding" ? SpaceTag::embedding : SpaceTag::coordinate;
    if (ctx.flags["space"] != "embedding" && ctx.flags["space"] != "coordinate")
      throw parse_error("--space must be coordinate or embedding");
    std::ostringstream csv;
    write_cloud_csv(csv, tile_points(ns, depth, space, ctx.limits, ctx.threads));
    r.side_files.emplace_back(ctx.flags["csv"], csv.str());
  }
  return r;
}

inline DigitalFunction parse_fn(const std::string& s) {
  if (s == "sod") return DigitalFunction::sod;
  if (s == "rs") return DigitalFunction::rs;
  throw parse_error("--fn must be sod or rs");
}

/// The character selected by --fn, --alpha / --phi and --h.
template <ExactInteger Int>
Character character_from(const Context& ctx, const NumberSystem<Int>& ns, std::int64_t h) {
  const auto fn = parse_fn(ctx.flags["fn"]);
  const bool alpha = ctx.flags.has_value("alpha"), phi = ctx.flags.has_value("phi");
  if (fn == DigitalFunction::rs) {
    if (!alpha || phi) throw parse_error("--fn rs takes --alpha");
    return rs_character(parse_coefficient(ctx.flags["alpha"]), h);
  }
  if (alpha == phi) throw parse_error("--fn sod takes exactly one of --alpha and --phi");
  if (phi) return sod_character(ns, LinearForm::parse(ctx.flags["phi"], ns.degree()), h);
  return sod_character(ns, parse_coefficient(ctx.flags["alpha"]), h);
}

inline Result cmd_weyl(const Context& ctx) {
  require_format(ctx, {"json", "csv"});
  const auto ns = system_from<Checked64>(ctx);
  require_fns(ns, ctx.limits);
  const auto h = static_cast<std::int64_t>(parse_integer<Checked64>(ctx.flags["harmonic"]).value());
  const auto chr = character_from(ctx, ns, h);
  Filter filter;
  if (ctx.flags["filter"] == "all") {
    filter = Filter::all;
  } else if (ctx.flags["filter"] == "primes") {
    filter = Filter::primes;
  } else {
    throw parse_error("--filter must be all or primes");
  }
  std::vector<WeylRow> rows;
  for (auto lambda : parse_size_list(ctx.flags["lambda"]))
    rows.push_back(weyl_sum(ns, chr, lambda, filter, h, ctx.limits, ctx.threads));
  if (ctx.format == "csv") {
    std::string body = weyl_csv_header();
    for (const auto& r : rows) body += weyl_csv_row(r);
    return {body, {}, false};
  }
  Json j;
  j["system"] = system_json(ns);
  j["fn"] = ctx.flags["fn"];
  if (ctx.flags.has_value("alpha")) j["alpha"] = ctx.flags["alpha"];
  if (ctx.flags.has_value("phi")) j["phi"] = ctx.flags["phi"];
  if (chr.fn == DigitalFunction::rs && !ns.is_binary()) j["warning"] = "Rudin-Shapiro on a non-binary system";
  Json arr = Json::array();
  for (const auto& r : rows) arr.push_back(weyl_json_row(r));
  j["partitions"] = rows.empty() ? 0 : rows.back().partitions;
  j["rows"] = arr;
  return {dump(j), {}, false};
}

inline Result cmd_fourier_decay(const Context& ctx) {
  require_format(ctx, {"json", "csv"});
  const auto ns = system_from<Checked64>(ctx);
  require_fns(ns, ctx.limits);
  const auto h = static_cast<std::int64_t>(parse_integer<Checked64>(ctx.flags["harmonic"]).value());
  const auto chr = character_from(ctx, ns, h);
  const auto lambda_max = parse_size(ctx.flags["lambda-max"]);
  const auto samples = parse_size(ctx.flags["samples"]);
  std::optional<double> alpha;
  if (ctx.flags.has_value("alpha")) alpha = parse_coefficient(ctx.flags["alpha"]).value * static_cast<double>(h);
  const auto rep = fourier_decay(ns, chr, lambda_max, samples, ctx.seed, alpha);
  if (ctx.format == "csv") {
    std::string body = decay_csv_header();
    for (const auto& r : rep.rows) body += decay_csv_row(r);
    return {body, {}, true};
  }
  Json j;
  j["system"] = system_json(ns);
  j["fn"] = ctx.flags["fn"];
  j["seed"] = rep.seed;
  j["random_samples"] = rep.random_samples;
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    Json row;
    row["lambda"] = r.lambda;
    row["samples"] = r.samples;
    row["max_log"] = json_number(r.max_log);
    row["gamma_emp"] = json_number(r.gamma_emp);
    if (rep.rs_gamma_rate) row["theory_ceiling"] = json_number(static_cast<double>(r.lambda) * (1.0 - *rep.rs_gamma_rate));
    rows.push_back(row);
  }
  j["rows"] = rows;
  Json ref;
  if (rep.rs_gamma_rate) ref["rs_gamma_rate"] = json_number(*rep.rs_gamma_rate);
  if (ctx.flags.has_value("phi")) {
    const auto k = sumdigit_fourier_constants(ns, LinearForm::parse(ctx.flags["phi"], ns.degree()));
    ref["mu_q"] = json_integer(k.mu_q);
    ref["M_q"] = json_integer(k.big_m_q);
    ref["digit_norm_sum"] = json_number(k.digit_norm_sum);
    ref["scaled_constant"] = json_number(k.scaled);
    ref["up_to_delta_q"] = true;
  }
  j["reference"] = ref;
  return {dump(j), {}, true};
}

inline Result cmd_primes(const Context& ctx) {
  require_format(ctx, {"json"});
  const auto ns = system_from<Checked64>(ctx);
  Json j;
  j["system"] = system_json(ns);
  if (ctx.flags.has_value("element")) {
    const auto x = parse_element<Checked64>(ctx.flags["element"], ns.degree());
    const auto v = is_prime_element(ns.order(), x);
    j["element"] = json_element(x);
    j["kind"] = to_string(v.kind);
    j["norm"] = v.norm;
    if (is_prime_kind(v.kind)) j["rational_prime"] = v.rational_prime;
  }
  if (ctx.flags.has_value("lambda")) {
    require_fns(ns, ctx.limits);
    const auto lambda = parse_size(ctx.flags["lambda"]);
    const auto primes = enumerate_primes(ns, lambda, ctx.limits);
    const PrimeClassifier<Checked64> classifier(ns.order());
    std::size_t split_count = 0, inert_count = 0;
    Json list = Json::array();
    for (const auto& p : primes) {
      (classifier.classify(p).kind == PrimeKind::prime_split ? split_count : inert_count) += 1;
      if (ctx.flags.on("list")) list.push_back(json_element(p));
    }
    j["lambda"] = lambda;
    j["count"] = primes.size();
    j["prime_split"] = split_count;
    j["prime_inert"] = inert_count;
    if (ctx.flags.on("list")) j["primes"] = list;
  }
  if (!ctx.flags.has_value("element") && !ctx.flags.has_value("lambda"))
    throw parse_error("primes needs --element or --lambda");
  return {dump(j), {}, false};
}

inline Result cmd_distortion(const Context& ctx) {
  require_format(ctx, {"json"});
  const auto poly = parse_polynomial<BigInt>(ctx.flags["poly"]);
  const auto dist = distortion(poly);
  Json roots = Json::array();
  for (const auto& r : poly.embeddings().roots) roots.push_back({json_number(r.real()), json_number(r.imag())});
  Json j;
  j["poly"] = format_polynomial(poly);
  j["roots"] = roots;
  j["max_residual"] = poly.embeddings().max_residual;
  j["theta_max"] = json_number(dist.theta_max);
  j["theta_min"] = json_number(dist.theta_min);
  Json w = Json::array();
  for (const auto& s : poly.warnings()) w.push_back(s);
  j["warnings"] = w;
  return {dump(j), {}, false};
}

/// Appends config-file entries whose flag is not already on the command line.
inline void merge_config(std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw parse_error("cannot read config file '" + path + "'");
  Json cfg;
  try {
    cfg = Json::parse(in);
  } catch (const Json::exception& e) {
    throw parse_error("config file '" + path + "': " + e.what());
  }
  if (!cfg.is_object()) throw parse_error("config file must hold a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    const bool present = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (present) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_string()) {
      args.push_back(flag);
      args.push_back(value.get<std::string>());
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) joined += (joined.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
      args.push_back(flag);
      args.push_back(joined);
    } else {
      args.push_back(flag);
      args.push_back(value.dump());
    }
  }
}

inline void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw resource_error("cannot open '" + path + "' for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw resource_error("write to '" + path + "' failed");
}

inline Json cycle_json(const cycle_error& e) {
  Json c = Json::array();
  for (const auto& s : e.cycle()) {
    Json el = Json::array();
    for (const auto& v : parse_integer_list<BigInt>(s)) el.push_back(json_integer(v));
    c.push_back(el);
  }
  return c;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  using Handler = std::function<Result(const Context&)>;
  CLI::App app{"Number systems in algebraic number rings: expansions, carries, tiles, exponential sums.", "radixion"};
  app.set_version_flag("--version", RADIXION_VERSION);
  app.require_subcommand(1, 1);

  FlagSet global;
  global.option(&app, "threads", "worker threads (default: hardware concurrency)");
  global.option(&app, "seed", "random seed", "1");
  global.option(&app, "out", "write the main artifact here instead of stdout");
  global.option(&app, "format", "json or csv", "json");
  global.option(&app, "config", "JSON file of flag values; command-line flags win");
  global.option(&app, "manifest", "manifest path (default: <out>.manifest.json, or stderr)");

  std::map<std::string, std::pair<std::unique_ptr<FlagSet>, Handler>> commands;
  auto add = [&](const std::string& name, const std::string& help, Handler h) -> std::pair<CLI::App*, FlagSet*> {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    auto& entry = commands[name];
    entry.first = std::make_unique<FlagSet>();
    entry.second = std::move(h);
    return {sub, entry.first.get()};
  };
  auto system_flags = [](CLI::App* sub, FlagSet* f, bool digits = true) {
    f->option(sub, "poly", "minimal polynomial c0,c1,...,cd", "", true);
    if (digits) f->option(sub, "digits", "digit set b;b;... (default 0..Q-1)");
  };

  {
    auto [sub, f] = add("expand", "base-q expansion of an element", detail::cmd_expand);
    system_flags(sub, f);
    f->option(sub, "element", "element a0,...,a{d-1}", "", true);
  }
  {
    auto [sub, f] = add("check-fns", "decide the finiteness property", detail::cmd_check_fns);
    system_flags(sub, f);
  }
  {
    auto [sub, f] = add("carry", "carry automaton and carry constant", detail::cmd_carry);
    system_flags(sub, f);
    f->option(sub, "dump-automaton", "write the automaton as DOT");
  }
  {
    auto [sub, f] = add("census", "exhaustive carry census", detail::cmd_census);
    system_flags(sub, f);
    f->option(sub, "mu", "length of m", "", true);
    f->option(sub, "nu", "digit index nu", "", true);
    f->option(sub, "rho", "rho values: list or a..b", "", true);
    f->option(sub, "bound-constant", "constant C in C Q^(mu - eta2 rho)", "8");
  }
  {
    auto [sub, f] = add("cns-carry", "canonical-system subset transducer and collapsed bound", detail::cmd_cns_carry);
    f->option(sub, "poly", "minimal polynomial");
    f->option(sub, "family-m", "m values for q = -(m+1)+i: list or a..b");
    f->flag(sub, "compare-automaton", "also compute the automaton constant of the canonical system");
  }
  {
    auto [sub, f] = add("tile", "fundamental tile raster, area, radii, box dimension", detail::cmd_tile);
    system_flags(sub, f);
    f->option(sub, "depth", "digits per point", "18");
    f->option(sub, "resolution", "cells along the longer side", "1024");
    f->option(sub, "cover-samples", "Monte Carlo points for the unique-cover check", "10000");
    f->option(sub, "pgm", "write the raster as PGM");
    f->option(sub, "csv", "write the depth-k point cloud as CSV");
    f->option(sub, "space", "point cloud space: coordinate or embedding", "coordinate");
    f->option(sub, "boxdim", "resolutions for the boundary box dimension, e.g. 256,512,1024");
    f->option(sub, "boxdim-depth", "depth used for box counting", "22");
  }
  auto character_flags = [](CLI::App* sub, FlagSet* f) {
    f->option(sub, "fn", "sod or rs", "", true);
    f->option(sub, "alpha", "scalar: p/q, decimal, or irr:<value>");
    f->option(sub, "phi", "linear form t0,...,t{d-1} (each p/q, decimal, or irr:<value>)");
    f->option(sub, "harmonic", "harmonic h", "1");
  };
  {
    auto [sub, f] = add("weyl", "Weyl sums over N_lambda or its primes", detail::cmd_weyl);
    system_flags(sub, f);
    character_flags(sub, f);
    f->option(sub, "lambda", "lambda values: list or a..b", "", true);
    f->option(sub, "filter", "all or primes", "all");
  }
  {
    auto [sub, f] = add("fourier-decay", "sampled decay of twisted sums", detail::cmd_fourier_decay);
    system_flags(sub, f);
    character_flags(sub, f);
    f->option(sub, "lambda-max", "largest lambda", "", true);
    f->option(sub, "samples", "random t per lambda (t = 0 is added)", "1000");
  }
  {
    auto [sub, f] = add("primes", "prime elements", detail::cmd_primes);
    system_flags(sub, f);
    f->option(sub, "element", "classify one element");
    f->option(sub, "lambda", "count primes in N_lambda");
    f->flag(sub, "list", "list the primes");
  }
  {
    auto [sub, f] = add("distortion", "conjugates and distortion parameters", detail::cmd_distortion);
    system_flags(sub, f, false);
  }

  const auto start = std::chrono::steady_clock::now();
  std::string subcommand;
  std::string out_path;
  try {
    detail::merge_config(args);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return usage_failure;
  } catch (const error& e) {
    err << "radixion: " << e.what() << '\n';
    return usage_failure;
  }

  subcommand = app.get_subcommands().front()->get_name();
  const auto& [flags, handler] = commands.at(subcommand);
  out_path = global["out"];

  auto emit_error = [&](const char* kind, const std::string& message, const Json* extra) {
    err << "radixion: " << message << '\n';
    Json j;
    j["error"] = kind;
    j["message"] = message;
    if (extra) j["cycle"] = *extra;
    const std::string body = detail::dump(j);
    try {
      if (out_path.empty()) {
        out << body;
      } else {
        detail::write_file(out_path, body);
      }
    } catch (const error&) {
    }
  };

  try {
    Context ctx{*flags, global, 1, 1, "json", Limits{}};
    ctx.threads = global.has_value("threads") ? static_cast<unsigned>(parse_size(global["threads"])) : default_thread_count();
    if (ctx.threads == 0) throw parse_error("--threads must be positive");
    ctx.seed = to_u64(parse_integer<BigInt>(global["seed"]));
    ctx.format = global["format"];
    if (ctx.format != "json" && ctx.format != "csv") throw parse_error("--format must be json or csv");
    ctx.limits = Limits::from_environment();

    Result result = handler(ctx);

    Json artifacts = Json::array();
    auto record = [&](const std::string& path, const std::string& bytes) {
      Json a;
      a["path"] = path;
      a["bytes"] = bytes.size();
      a["fnv1a64"] = fnv1a_hex(bytes);
      artifacts.push_back(a);
    };
    if (out_path.empty()) {
      out << result.body;
      record("-", result.body);
    } else {
      detail::write_file(out_path, result.body);
      record(out_path, result.body);
    }
    for (const auto& [path, bytes] : result.side_files) {
      detail::write_file(path, bytes);
      record(path, bytes);
    }

    std::map<std::string, std::string> normalized;
    global.normalized(normalized);
    flags->normalized(normalized);
    normalized["threads"] = std::to_string(ctx.threads);
    normalized.erase("config");
    Json manifest;
    manifest["tool"] = "radixion";
    manifest["version"] = RADIXION_VERSION;
    manifest["subcommand"] = subcommand;
    manifest["flags"] = normalized;
    if (result.uses_seed) manifest["seed"] = ctx.seed;
    if (const char* cap = std::getenv("RADIXION_CAP")) manifest["radixion_cap"] = cap;
    manifest["artifacts"] = artifacts;
    manifest["wall_time_s"] =
        json_number(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    const std::string manifest_path =
        global.has_value("manifest") ? global["manifest"] : (out_path.empty() ? std::string() : out_path + ".manifest.json");
    if (manifest_path.empty()) {
      err << dump_json(manifest, -1) << '\n';
    } else {
      detail::write_file(manifest_path, detail::dump(manifest));
    }
    return success;
  } catch (const cycle_error& e) {
    const Json c = detail::cycle_json(e);
    emit_error("cycle", e.what(), &c);
    return domain_failure;
  } catch (const parse_error& e) {
    err << "radixion: " << e.what() << '\n';
    return usage_failure;
  } catch (const resource_error& e) {
    emit_error("resource", e.what(), nullptr);
    return resource_failure;
  } catch (const configuration_error& e) {
    emit_error("configuration", e.what(), nullptr);
    return domain_failure;
  } catch (const invalid_base_error& e) {
    emit_error("invalid_base", e.what(), nullptr);
    return domain_failure;
  } catch (const numeric_error& e) {
    emit_error("numeric", e.what(), nullptr);
    return domain_failure;
  } catch (const std::exception& e) {
    emit_error("internal", e.what(), nullptr);
    return domain_failure;
  }
}

}  // namespace radixion::cli
