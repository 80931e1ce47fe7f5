#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "stplus/characters.hpp"
#include "stplus/tori.hpp"
#include "stplus/weyl.hpp"
#include "verify.hpp"

using json = nlohmann::ordered_json;
using namespace stp;

namespace {

struct Config {
  std::string command;
  std::uint64_t q = 0;
  unsigned p = 0, k = 1;
  int dim = 0;
  std::string type;
  std::string cache_dir;
  std::string format = "text";
  std::uint64_t max_order = EnumOptions{}.max_order;
  std::string suite;
  // weyl
  std::string wtype = "B";
  int n = 0;
  bool doublecosets = false;
  // group
  std::string kind;

  FieldPtr field;
  FormType form = FormType::Odd;
  EnumOptions opts;
};

void resolve_field(Config& c, bool required) {
  if (c.q) {
    std::uint64_t q = c.q;
    unsigned p = 2;
    while (q % p) ++p;
    unsigned k = 0;
    while (q % p == 0) {
      q /= p;
      ++k;
    }
    if (q != 1) throw CLI::ValidationError("--q", std::to_string(c.q) + " is not a prime power");
    if (c.p && c.p != p) throw CLI::ValidationError("--p", "conflicts with --q");
    c.p = p;
    c.k = k;
  }
  if (!c.p) {
    if (required) throw CLI::RequiredError("--q (or --p/--k)");
    return;
  }
  if (!is_prime(c.p)) throw CLI::ValidationError("--p", std::to_string(c.p) + " is not prime");
  c.field = Field::make(c.p, c.k);
  c.q = c.field->q();
}

void resolve_space(Config& c) {
  resolve_field(c, true);
  if (c.dim < 1) throw CLI::RequiredError("--dim");
  if (c.type.empty()) c.type = c.dim % 2 ? "odd" : "+";
  c.form = parse_form_type(c.type);
  if ((c.dim % 2 == 1) != (c.form == FormType::Odd))
    throw CLI::ValidationError("--type", "type '" + c.type + "' does not fit dimension " + std::to_string(c.dim));
}

void resolve_opts(Config& c) {
  c.opts.max_order = c.max_order;
  c.opts.cache_dir = c.cache_dir;
}

json config_json(const Config& c) {
  json j;
  j["command"] = c.command;
  if (c.q) {
    j["q"] = c.q;
    j["p"] = c.p;
    j["k"] = c.k;
  }
  if (c.dim) {
    j["dim"] = c.dim;
    j["type"] = c.type;
  }
  if (c.command == "weyl") {
    j["weyl_type"] = c.wtype;
    j["n"] = c.n;
  }
  if (!c.suite.empty()) j["suite"] = c.suite;
  if (!c.kind.empty()) j["kind"] = c.kind;
  j["max_order"] = c.max_order;
  j["cache_dir"] = resolve_cache_dir(c.opts);
  j["format"] = c.format;
  return j;
}

// "# key=value ..." header for text and csv output.
std::string config_line(const Config& c) {
  std::ostringstream os;
  os << "#";
  const json j = config_json(c);
  for (auto& [k, v] : j.items()) os << " " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
  return os.str();
}

// ---------------------------------------------------------------------------

int cmd_tori(Config& c) {
  resolve_space(c);
  json rows = json::array();
  for (auto& s : tori::enumerate_decomps(c.dim, c.form)) {
    json r;
    auto lab = s.decomp.label();
    r["torus"] = s.to_string();
    r["label_d"] = lab.d_string();
    r["label_e"] = lab.e_string();
    r["branch"] = s.branch;
    r["order"] = tori::torus_order(s, c.q);
    r["class"] = tori::to_string(tori::classify(s));
    r["weyl_order"] = tori::weyl_order(s);
    rows.push_back(r);
  }
  if (c.format == "json") {
    json out;
    out["config"] = config_json(c);
    out["tori"] = rows;
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << config_line(c) << "\n";
  if (c.format == "csv") {
    std::cout << "torus,label_d,label_e,branch,order,class,weyl_order\n";
    for (auto& r : rows)
      std::cout << '"' << r["torus"].get<std::string>() << "\"," << r["label_d"].get<std::string>() << ","
                << r["label_e"].get<std::string>() << "," << r["branch"] << "," << r["order"] << ","
                << r["class"].get<std::string>() << "," << r["weyl_order"] << "\n";
  } else {
    for (auto& r : rows)
      std::cout << r["torus"].get<std::string>() << "  order " << r["order"] << "  " << r["class"].get<std::string>()
                << "  |W(T)| " << r["weyl_order"] << "\n";
  }
  return 0;
}

int cmd_weyl(Config& c) {
  if (c.n < 1) throw CLI::RequiredError("--n");
  if (c.wtype != "B" && c.wtype != "D") throw CLI::ValidationError("--type", "expected B or D");
  auto t = c.wtype == "B" ? weyl::WType::B : weyl::WType::D;
  auto cls = weyl::conjugacy_classes(t, c.n);
  std::optional<std::uint64_t> cross, self;
  if (c.doublecosets) {
    self = weyl::self_norm(c.n, t);
    if (t == weyl::WType::D) cross = weyl::cross_norm(c.n);
  }
  if (c.format == "json") {
    json out;
    out["config"] = config_json(c);
    out["order"] = weyl::group_order(t, c.n);
    json rows = json::array();
    for (auto& w : cls)
      rows.push_back({{"label_d", w.label.d_string()},
                      {"label_e", w.label.e_string()},
                      {"size", w.size},
                      {"centralizer", w.centralizer},
                      {"splits", w.splits}});
    out["classes"] = rows;
    if (c.doublecosets) {
      json dc;
      dc["self"] = *self;
      if (cross) dc["cross"] = *cross;
      out["doublecosets"] = dc;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << config_line(c) << "\n";
  if (c.format == "csv") {
    weyl::write_class_csv(std::cout, t, c.n);
  } else {
    std::cout << "W(" << c.wtype << c.n << ") order " << weyl::group_order(t, c.n) << ", " << cls.size()
              << " classes\n";
    for (auto& w : cls)
      std::cout << w.label.to_string() << "  size " << w.size << "  centralizer " << w.centralizer
                << (w.splits ? "  split" : "") << "\n";
  }
  if (c.doublecosets) {
    if (cross) std::cout << "cross " << *cross << "\n";
    std::cout << "self " << *self << "\n";
  }
  return 0;
}

int cmd_group(Config& c) {
  resolve_space(c);
  GroupKind kind = c.kind.empty() ? chars::natural_kind(*c.field) : parse_group_kind(c.kind);
  std::optional<MatGroup> G;
  if (kind == GroupKind::Sp) {
    if (c.dim % 2) throw CLI::ValidationError("--dim", "Sp needs even dimension");
    G.emplace(build_symplectic(c.dim, c.field, c.opts));
  } else {
    G.emplace(build_group(standard_space(c.dim, c.form, c.field), kind, c.opts));
  }
  G->compute_classes(c.opts);
  std::uint64_t ss = 0;
  for (auto& cl : G->classes()) ss += cl.semisimple;
  json out;
  out["config"] = config_json(c);
  out["group"] = G->label();
  out["order"] = G->order();
  out["expected_order"] = G->expected_order() ? G->expected_order()->str() : "";
  out["classes"] = G->classes().size();
  out["semisimple_classes"] = ss;
  if (c.format == "json") {
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << config_line(c) << "\n";
  if (c.format == "csv") {
    std::cout << "group,order,expected_order,classes,semisimple_classes\n"
              << G->label() << "," << G->order() << "," << out["expected_order"].get<std::string>() << ","
              << G->classes().size() << "," << ss << "\n";
  } else {
    std::cout << G->label() << "  order " << G->order() << " (closed form " << out["expected_order"].get<std::string>()
              << ")  " << G->classes().size() << " classes, " << ss << " semisimple\n";
  }
  return 0;
}

int cmd_omega(Config& c) {
  resolve_space(c);
  MatGroup G = build_group(standard_space(c.dim, c.form, c.field), chars::natural_kind(*c.field), c.opts);
  G.compute_classes(c.opts);
  auto sp = chars::make_stplus(G);
  auto stp = sp.stplus();
  auto wa = sp.omega_quotient();
  auto wb = sp.omega_power();
  const auto& st = sp.st_g();
  json rows = json::array();
  bool agree = true;
  for (std::size_t i = 0; i < G.classes().size(); ++i) {
    const auto& cl = G.classes()[i];
    agree = agree && wa[i] == wb[i];
    rows.push_back({{"class", i},
                    {"rep", chars::encode_hex(G, G.class_rep(static_cast<std::uint32_t>(i)))},
                    {"order", cl.element_order},
                    {"size", cl.size},
                    {"centralizer", cl.centralizer_order},
                    {"semisimple", cl.semisimple},
                    {"st", st[i]},
                    {"st_plus", stp[i]},
                    {"omega_quotient", wa[i]},
                    {"omega_power", wb[i]}});
  }
  if (c.format == "json") {
    json out;
    out["config"] = config_json(c);
    out["group"] = G.label();
    out["ambient"] = sp.embedding().big().dim();
    out["classes"] = rows;
    out["paths_agree"] = agree;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << config_line(c) << "\n";
    const char* cols[] = {"class", "rep", "order", "size", "centralizer", "semisimple", "st", "st_plus",
                          "omega_quotient", "omega_power"};
    std::string sep = c.format == "csv" ? "," : "\t";
    for (std::size_t i = 0; i < std::size(cols); ++i) std::cout << (i ? sep : "") << cols[i];
    std::cout << "\n";
    for (auto& r : rows) {
      for (std::size_t i = 0; i < std::size(cols); ++i) {
        auto& v = r[cols[i]];
        std::cout << (i ? sep : "") << (v.is_string() ? v.get<std::string>() : v.dump());
      }
      std::cout << "\n";
    }
    if (c.format == "text") std::cout << (agree ? "paths agree\n" : "PATHS DISAGREE\n");
  }
  return agree ? 0 : 1;
}

json census_json(const Config& c, const chars::CensusReport& r) {
  json out;
  out["config"] = config_json(c);
  out["group"] = r.group;
  out["q"] = r.q;
  out["dim"] = r.dim;
  out["type"] = r.type;
  out["dual"] = r.dual;
  json series = json::array();
  for (auto& s : r.series) {
    json j;
    j["s_rep"] = s.s_rep;
    j["order_s"] = s.order_s;
    j["class_size"] = s.class_size;
    j["dim_fix"] = s.dim_fix;
    j["defect"] = s.defect;
    j["tag"] = s.tag;
    j["m"] = s.m;
    j["predicted_norm"] = s.predicted_norm;
    j["predicted_count"] = s.predicted_count;
    j["max_mult"] = s.max_mult;
    series.push_back(j);
  }
  out["series"] = series;
  out["totals"] = {{"predicted_norm_sum", r.predicted_norm_sum},
                   {"bruteforce_norm", chars::to_string(r.bruteforce_norm)},
                   {"match", r.match}};
  if (r.inner_products) {
    out["inner_products"] = {{"st", chars::to_string(r.inner_products->st)},
                  {"st_minus", chars::to_string(r.inner_products->st_minus)},
                  {"one", chars::to_string(r.inner_products->one)},
                  {"one_minus", chars::to_string(r.inner_products->one_minus)},
                  {"expected", r.inner_products->expected},
                  {"match", r.inner_products->match}};
  } else {
    out["inner_products"] = nullptr;
  }
  return out;
}

int cmd_census(Config& c) {
  resolve_space(c);
  auto r = chars::census(standard_space(c.dim, c.form, c.field), c.opts);
  if (c.format == "json") {
    std::cout << census_json(c, r).dump(2) << "\n";
    return r.match ? 0 : 1;
  }
  std::cout << config_line(c) << "\n";
  if (c.format == "csv") {
    std::cout << "s_rep,order_s,class_size,dim_fix,defect,tag,m,predicted_norm,predicted_count,max_mult\n";
    for (auto& s : r.series)
      std::cout << s.s_rep << "," << s.order_s << "," << s.class_size << "," << s.dim_fix << "," << s.defect << ","
                << s.tag << "," << s.m << "," << s.predicted_norm << "," << s.predicted_count << "," << s.max_mult
                << "\n";
  } else {
    std::cout << r.group << " (dual " << r.dual << ")\n";
    for (auto& s : r.series)
      std::cout << "  s=" << s.s_rep << " order " << s.order_s << "  dim fix " << s.dim_fix << "  " << s.tag
                << "  m=" << s.m << "  norm " << s.predicted_norm << "  count " << s.predicted_count << "  max mult "
                << s.max_mult << "\n";
    std::cout << "predicted " << r.predicted_norm_sum << ", brute force " << chars::to_string(r.bruteforce_norm)
              << (r.match ? "  PASS" : "  FAIL") << "\n";
    if (r.inner_products)
      std::cout << "inner products (" << chars::to_string(r.inner_products->st) << ", " << chars::to_string(r.inner_products->st_minus) << ", "
                << chars::to_string(r.inner_products->one) << ", " << chars::to_string(r.inner_products->one_minus) << ") expected "
                << r.inner_products->expected << (r.inner_products->match ? "  PASS" : "  FAIL") << "\n";
  }
  return r.match ? 0 : 1;
}

int cmd_verify(Config& c, const std::string& positional) {
  std::string suite = !c.suite.empty() ? c.suite : positional.empty() ? "all" : positional;
  c.suite = suite;
  cli::VerifyConfig vc;
  vc.opts = c.opts;
  if (c.dim || c.q || c.p) {
    resolve_space(c);
    vc.target = cli::Target{c.field, c.dim, c.form};
  }
  auto results = cli::run_suite(suite, vc);
  std::size_t failed = 0;
  for (auto& r : results) failed += !r.pass;
  if (c.format == "json") {
    json out;
    out["config"] = config_json(c);
    json rows = json::array();
    for (auto& r : results) rows.push_back({{"suite", r.suite}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    out["results"] = rows;
    out["passed"] = results.size() - failed;
    out["failed"] = failed;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << config_line(c) << "\n";
    if (c.format == "csv") std::cout << "suite,name,result,detail\n";
    for (auto& r : results) {
      if (c.format == "csv")
        std::cout << r.suite << ",\"" << r.name << "\"," << (r.pass ? "PASS" : "FAIL") << ",\"" << r.detail << "\"\n";
      else
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.suite << ": " << r.name
                  << (r.detail.empty() ? "" : "  [" + r.detail + "]") << "\n";
    }
    if (c.format == "text") std::cout << results.size() - failed << " passed, " << failed << " failed\n";
  }
  return failed ? 1 : 0;
}

void add_common(CLI::App* app, Config& c, bool space) {
  if (space) {
    app->add_option("--q", c.q, "field size (prime power)");
    app->add_option("--p", c.p, "field characteristic");
    app->add_option("--k", c.k, "extension degree");
    app->add_option("--dim", c.dim, "dimension of the quadratic space");
    app->add_option("--type", c.type, "form type")->check(CLI::IsMember({"+", "-", "odd"}));
  }
  app->add_option("--cache-dir", c.cache_dir, "group cache directory (default: $STB_CACHE_DIR)");
  app->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app->add_option("--max-order", c.max_order, "refuse to enumerate groups above this order");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steinberg-plus characters of finite orthogonal groups"};
  app.require_subcommand(1);
  Config c;
  std::string positional;

  auto* tori_cmd = app.add_subcommand("tori", "maximal tori of SO(V)");
  add_common(tori_cmd, c, true);
  auto* weyl_cmd = app.add_subcommand("weyl", "conjugacy classes of W(B_n) / W(D_n)");
  add_common(weyl_cmd, c, false);
  weyl_cmd->add_option("--type", c.wtype, "B or D")->check(CLI::IsMember({"B", "D"}));
  weyl_cmd->add_option("--n", c.n, "rank")->required();
  weyl_cmd->add_flag("--doublecosets", c.doublecosets, "print the self and cross double-coset norms for m = n");
  auto* omega_cmd = app.add_subcommand("omega", "Steinberg, Steinberg-plus and omega per class");
  add_common(omega_cmd, c, true);
  auto* census_cmd = app.add_subcommand("census", "series census of <St+, St+>");
  add_common(census_cmd, c, true);
  auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
  add_common(verify_cmd, c, true);
  verify_cmd->add_option("suite_name", positional, "suite (fields, spaces, groups, weyl, tori, omega, "
                                                   "multiplication, census, inner-products, all)");
  verify_cmd->add_option("--suite", c.suite, "suite, same as the positional argument");
  auto* group_cmd = app.add_subcommand("group", "enumerate a group and its classes");
  add_common(group_cmd, c, true);
  group_cmd->add_option("--kind", c.kind, "O, SO, Omega or Sp (default SO for q odd, Omega for q even)");

  try {
    app.parse(argc, argv);
    auto* sub = app.get_subcommands().front();
    c.command = sub->get_name();
    resolve_opts(c);
    if (!positional.empty() && !c.suite.empty() && positional != c.suite)
      throw CLI::ValidationError("suite", "positional suite and --suite differ");
    if (c.command == "tori") return cmd_tori(c);
    if (c.command == "weyl") return cmd_weyl(c);
    if (c.command == "omega") return cmd_omega(c);
    if (c.command == "census") return cmd_census(c);
    if (c.command == "verify") return cmd_verify(c, positional);
    if (c.command == "group") return cmd_group(c);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
