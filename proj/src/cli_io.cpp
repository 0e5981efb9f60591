#include "gaugecount/cli_io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <memory>
#include <sstream>

namespace gaugecount {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

[[noreturn]] void bad_config(const std::string& where, const std::string& msg) {
  fail(ErrorKind::InvalidConfig, where + ": " + msg);
}

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad_config(where, std::string("missing '") + key + "'");
  return j.at(key);
}

template <typename T>
T get_as(const json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    bad_config(where, e.what());
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return get_as<T>(j.at(key), where + "." + key);
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::string fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

GroupSpec parse_group_spec(const json& j, const std::string& where) {
  GroupSpec spec;
  spec.family = parse_group_family(get_as<std::string>(require(j, "family", where), where + ".family"));
  spec.params = get_or<std::vector<std::int64_t>>(j, "params", {}, where);
  if (j.contains("factors")) {
    const auto& f = j.at("factors");
    if (!f.is_array()) bad_config(where, "'factors' must be an array");
    for (std::size_t i = 0; i < f.size(); ++i) spec.factors.push_back(parse_group_spec(f[i], where + ".factors[" + std::to_string(i) + "]"));
  }
  return spec;
}

Element element_index(const GroupRef& g, const json& j, const std::string& where) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    for (Element x = 0; x < g->order(); ++x) {
      if (g->label(x) == name) return x;
    }
    bad_config(where, "no element labelled '" + name + "'");
  }
  const auto v = get_as<long long>(j, where);
  if (v < 0 || static_cast<std::size_t>(v) >= g->order()) bad_config(where, "element index out of range");
  return static_cast<Element>(v);
}

std::vector<Element> element_list(const GroupRef& g, const json& j, const std::string& where) {
  if (!j.is_array()) bad_config(where, "expected an array of elements");
  std::vector<Element> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(element_index(g, j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

GroupAction load_action(const GroupRef& g, const json& j, const fs::path& base, const std::string& where) {
  if (j.contains("file")) return parse_action(g, read_text_file(resolve(base, get_as<std::string>(j.at("file"), where + ".file"))));
  const auto type = get_as<std::string>(require(j, "type", where), where + ".type");
  if (type == "left_mult") return action_left_mult(g);
  if (type == "trivial") return action_trivial(g, get_or<std::size_t>(j, "size", 1, where));
  if (type == "coset") {
    const auto gens = element_list(g, require(j, "subgroup", where), where + ".subgroup");
    return action_coset(g, generated_subgroup(g, gens));
  }
  if (type == "product") {
    const auto& f = require(j, "factors", where);
    if (!f.is_array() || f.empty()) bad_config(where, "'factors' must be a non-empty array");
    auto acc = load_action(g, f[0], base, where + ".factors[0]");
    for (std::size_t i = 1; i < f.size(); ++i) acc = action_product(acc, load_action(g, f[i], base, where + ".factors[" + std::to_string(i) + "]"));
    return acc;
  }
  bad_config(where, "unknown action type '" + type + "'");
}

UnitaryRep load_rep(const Job& job, const json& j, const fs::path& base, const std::string& where) {
  if (j.contains("file")) return parse_rep(job.group, read_text_file(resolve(base, get_as<std::string>(j.at("file"), where + ".file"))));
  const auto name = get_as<std::string>(require(j, "name", where), where + ".name");
  const auto param = get_or<std::int64_t>(j, "param", 1, where);
  if (job.group_spec) return builtin_rep(job.group, *job.group_spec, name, param);
  if (name == "trivial") return rep_trivial(job.group, static_cast<std::size_t>(param));
  if (name == "regular") return rep_permutation(action_left_mult(job.group));
  bad_config(where, "representation '" + name + "' needs a builtin group; use a rep file");
}

GroupEndomorphism load_map(const GroupRef& g, const json& j, const fs::path& base, const std::string& where) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "identity") return identity_endomorphism(g);
    if (name == "trivial") return trivial_endomorphism(g);
    if (name == "inversion") return inversion_endomorphism(g);
    bad_config(where, "unknown map '" + name + "'");
  }
  if (j.contains("inner")) return inner_automorphism(g, element_index(g, j.at("inner"), where + ".inner"));
  if (j.contains("image")) return GroupEndomorphism(g, element_list(g, j.at("image"), where + ".image"));
  if (j.contains("file")) return parse_endomorphism(g, read_text_file(resolve(base, get_as<std::string>(j.at("file"), where + ".file"))));
  bad_config(where, "expected a map name or an object with 'inner', 'image' or 'file'");
}

json cyclotomic_json(const CycloRat& z) {
  if (z.is_rational()) return {{"root_order", 1}, {"coefficients", {to_string(z.rational_part())}}};
  json coeffs = json::array();
  for (const auto& c : z.coefficients()) coeffs.push_back(to_string(c));
  return {{"root_order", z.order()}, {"coefficients", coeffs}};
}

json count_report_json_body(const CountReport& r) {
  json classes = json::array();
  for (const auto& c : r.per_class) {
    classes.push_back({{"id", c.class_id},
                       {"size", c.class_size},
                       {"representative", c.representative},
                       {"contribution_exact", cyclotomic_json(c.value)},
                       {"contribution_decimal", c.decimal}});
  }
  return {{"formula", r.formula}, {"total", r.total.str()}, {"classes", classes}, {"warnings", r.warnings},
          {"integrality_witness", r.integrality_witness_holds()}};
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

OutputFormat parse_output_format(std::string_view name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  if (name == "text") return OutputFormat::text;
  fail(ErrorKind::InvalidConfig, "unknown output format '" + std::string(name) + "'");
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const fs::path& path, const std::string& text, bool force) {
  if (!force && fs::exists(path)) fail(ErrorKind::IoError, path.string() + " exists; pass --force to overwrite");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::IoError, "cannot write " + path.string());
  out << text;
  if (!out) fail(ErrorKind::IoError, "write failed for " + path.string());
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

GroupRef load_group(const json& spec, const fs::path& base_dir, std::optional<GroupSpec>* builtin_out) {
  if (spec.contains("file")) {
    if (builtin_out) builtin_out->reset();
    return parse_cayley_table(read_text_file(resolve(base_dir, get_as<std::string>(spec.at("file"), "group.file"))));
  }
  const auto gs = parse_group_spec(spec, "group");
  if (builtin_out) *builtin_out = gs;
  return builtin_group(gs);
}

Job load_job(const json& config, const fs::path& base_dir) {
  if (!config.is_object()) bad_config("config", "expected a JSON object");
  Job job;
  job.fingerprint = fnv1a(config.dump());
  job.group = load_group(require(config, "group", "config"), base_dir, &job.group_spec);

  // Lattice.
  const auto& lat = require(config, "lattice", "config");
  std::vector<std::size_t> file_twisted;
  if (lat.contains("file")) {
    auto f = lattice_from_edge_list(read_text_file(resolve(base_dir, get_as<std::string>(lat.at("file"), "lattice.file"))));
    job.lattice = std::move(f.lattice);
    file_twisted = std::move(f.twisted_edges);
  } else if (lat.contains("edges")) {
    const auto v = get_as<std::size_t>(require(lat, "sites", "lattice"), "lattice.sites");
    std::vector<Edge> edges;
    for (const auto& e : get_as<std::vector<std::vector<std::uint32_t>>>(lat.at("edges"), "lattice.edges")) {
      if (e.size() != 2) bad_config("lattice.edges", "each edge is a [tail, head] pair");
      edges.push_back({e[0], e[1], -1});
    }
    job.lattice = make_lattice(v, std::move(edges));
  } else {
    const auto dims = get_as<std::vector<std::uint32_t>>(require(lat, "dims", "lattice"), "lattice.dims");
    // std::vector<bool> has no contiguous storage.
    const std::unique_ptr<bool[]> periodic(new bool[dims.size() + 1]);
    std::fill_n(periodic.get(), dims.size(), true);
    if (lat.contains("periodic")) {
      const auto& p = lat.at("periodic");
      if (p.is_boolean()) {
        std::fill_n(periodic.get(), dims.size(), p.get<bool>());
      } else {
        const auto flags = get_as<std::vector<bool>>(p, "lattice.periodic");
        if (flags.size() != dims.size()) fail(ErrorKind::BadDims, "lattice.periodic must have one flag per dimension");
        for (std::size_t k = 0; k < dims.size(); ++k) periodic[k] = flags[k];
      }
    }
    job.lattice = lattice_hypercubic(dims, std::span<const bool>(periodic.get(), dims.size()));
  }

  // Twist or dangling boundary.
  if (lat.contains("dangling")) {
    if (config.contains("twist")) bad_config("lattice.dangling", "cannot be combined with an explicit twist");
    const auto attach = get_as<std::vector<std::uint32_t>>(lat.at("dangling"), "lattice.dangling");
    auto ext = dangling_boundary_extension(job.lattice, attach, job.group);
    job.lattice = std::move(ext.lattice);
    if (!ext.twist.edges.empty()) job.twist = std::move(ext.twist);
  } else if (config.contains("twist")) {
    const auto& t = config.at("twist");
    auto phi = load_map(job.group, require(t, "map", "twist"), base_dir, "twist.map");
    EdgeSelector sel = file_twisted;
    if (t.contains("edges")) {
      const auto& e = t.at("edges");
      if (e.is_object()) {
        sel = WrapDirection{get_as<int>(require(e, "wrap_direction", "twist.edges"), "twist.edges.wrap_direction")};
      } else {
        sel = get_as<std::vector<std::size_t>>(e, "twist.edges");
      }
    } else if (file_twisted.empty()) {
      bad_config("twist", "no 'edges' given and the lattice file marks no twisted links");
    }
    job.twist = make_twist(job.lattice, std::move(phi), sel);
  } else if (!file_twisted.empty()) {
    bad_config("lattice.file", "marks twisted links but the config has no 'twist' map");
  }

  // Matter.
  if (config.contains("matter")) {
    const auto& m = config.at("matter");
    const auto kind = get_as<std::string>(require(m, "kind", "matter"), "matter.kind");
    if (kind == "none") {
      job.matter = NoMatter{};
    } else if (kind == "scalar") {
      job.matter = ScalarMatter{load_action(job.group, require(m, "action", "matter"), base_dir, "matter.action")};
    } else if (kind == "scalar_per_site") {
      const auto& a = require(m, "actions", "matter");
      if (!a.is_array()) bad_config("matter.actions", "expected an array");
      ScalarPerSite s;
      for (std::size_t i = 0; i < a.size(); ++i) s.actions.push_back(load_action(job.group, a[i], base_dir, "matter.actions[" + std::to_string(i) + "]"));
      job.matter = std::move(s);
    } else if (kind == "static_charges") {
      const auto& a = require(m, "reps", "matter");
      if (!a.is_array()) bad_config("matter.reps", "expected an array");
      RepPerSite s;
      for (std::size_t i = 0; i < a.size(); ++i) s.reps.push_back(load_rep(job, a[i], base_dir, "matter.reps[" + std::to_string(i) + "]"));
      job.matter = std::move(s);
    } else if (kind == "fermion") {
      const auto& a = require(m, "flavours", "matter");
      if (!a.is_array() || a.empty()) bad_config("matter.flavours", "expected a non-empty array");
      FermionMatter f;
      for (std::size_t i = 0; i < a.size(); ++i) f.flavours.push_back(load_rep(job, a[i], base_dir, "matter.flavours[" + std::to_string(i) + "]"));
      f.spinor_count = get_or<std::uint32_t>(m, "spinor_count", 1, "matter");
      const auto vac = get_or<std::string>(m, "vacuum", "trivial", "matter");
      if (vac == "trivial") {
        f.vacuum = VacuumKind::trivial;
      } else if (vac == "staggered") {
        f.vacuum = VacuumKind::staggered;
      } else if (vac == "explicit") {
        f.vacuum = VacuumKind::explicit_rep;
        const auto& vr = require(m, "vacuum_rep", "matter");
        f.vacuum_rep = OneDimRep(job.group, get_as<std::uint32_t>(require(vr, "root_order", "matter.vacuum_rep"), "matter.vacuum_rep.root_order"),
                                 get_as<std::vector<std::int64_t>>(require(vr, "generator_exponents", "matter.vacuum_rep"),
                                                                   "matter.vacuum_rep.generator_exponents"));
      } else {
        bad_config("matter.vacuum", "unknown vacuum '" + vac + "'");
      }
      job.parity_split = get_or<bool>(m, "parity_split", false, "matter");
      job.matter = std::move(f);
    } else {
      bad_config("matter.kind", "unknown kind '" + kind + "'");
    }
  }
  validate_matter(job.group, job.matter);

  if (config.contains("output")) {
    const auto& o = config.at("output");
    if (o.contains("path")) job.output_path = resolve(base_dir, get_as<std::string>(o.at("path"), "output.path"));
    if (o.contains("format")) job.format = parse_output_format(get_as<std::string>(o.at("format"), "output.format"));
  }
  job.budget = get_or<std::uint64_t>(config, "budget", job.budget, "config");
  job.threads = std::max<std::size_t>(1, get_or<std::size_t>(config, "threads", 1, "config"));
  return job;
}

Job load_job_file(const fs::path& path) {
  const auto text = read_text_file(path);
  json config;
  try {
    config = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
  return load_job(config, path.parent_path().empty() ? fs::path(".") : path.parent_path());
}

CountOutcome run_count(const Job& job, bool corrupt_character) {
  const auto classes = conjugacy_classes(*job.group);
  CountOptions opts;
  opts.threads = job.threads;
  const TwistSpec* twist = job.twist ? &*job.twist : nullptr;
  CountOutcome out{{}, std::nullopt, total_hilbert_dim(job.group, job.lattice, job.matter)};
  if (corrupt_character) {
    // Supported on the identity class only, with a value coprime to |G|.
    ClassFunction bad = constant_class_function(job.group, classes, CycloRat(0));
    bad.values[0] = CycloRat(BigRational(1, static_cast<long long>(job.group->order()) + 1));
    out.report = count_general(job.group, classes, job.lattice, std::vector<ClassFunction>(job.lattice.V(), bad), nullptr,
                               twist, opts);
    return out;
  }
  const auto* fermion = std::get_if<FermionMatter>(&job.matter);
  if (job.parity_split && fermion) {
    auto split = count_fermion_parity_split(job.group, classes, job.lattice, *fermion, twist, opts);
    out.report = split.plus;
    out.parity = std::move(split);
  } else {
    out.report = count(job.group, classes, job.lattice, job.matter, twist, opts);
  }
  return out;
}

VerifyOutcome run_verify(const Job& job, std::int64_t fault_offset) {
  const auto formula = run_count(job);
  OracleOptions opts;
  opts.budget = job.budget;
  opts.threads = job.threads;
  const TwistSpec* twist = job.twist ? &*job.twist : nullptr;
  const OracleResult oracle = std::visit(
      [&](const auto& m) -> OracleResult {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, NoMatter>) {
          return burnside_count(job.group, job.lattice, {}, twist, opts);
        } else if constexpr (std::is_same_v<T, ScalarMatter>) {
          return burnside_count(job.group, job.lattice, {m.action}, twist, opts);
        } else if constexpr (std::is_same_v<T, ScalarPerSite>) {
          return burnside_count(job.group, job.lattice, m.actions, twist, opts);
        } else if constexpr (std::is_same_v<T, RepPerSite>) {
          return rep_trace_count(job.group, job.lattice, m.reps, twist, opts);
        } else {
          return fock_trace_count(job.group, job.lattice, m, twist, false, opts);
        }
      },
      job.matter);
  VerifyOutcome out;
  out.formula_total = formula.report.total + fault_offset;
  out.oracle_total = oracle.total;
  out.oracle_exact = oracle.exact;
  out.match = out.formula_total == out.oracle_total;
  if (out.match && formula.parity) {
    const auto& f = std::get<FermionMatter>(job.matter);
    const auto weighted = fock_trace_count(job.group, job.lattice, f, twist, true, opts);
    out.match = weighted.total == formula.parity->minus.total;
  }
  return out;
}

json count_report_json(const Job& job, const CountOutcome& out, const std::string& timestamp) {
  json doc = {{"command", "count"},
              {"group_order", job.group->order()},
              {"sites", job.lattice.V()},
              {"links", job.lattice.E()},
              {"instance_fingerprint", job.fingerprint}};
  doc.update(count_report_json_body(out.report));
  doc["total_hilbert_dim"] = out.total_dim.str();
  if (out.parity) {
    doc["parity"] = {{"even", out.parity->even.str()}, {"odd", out.parity->odd.str()}, {"weighted_total", out.parity->minus.total.str()}};
  }
  if (!timestamp.empty()) doc["timestamp"] = timestamp;
  return doc;
}

json verify_report_json(const Job& job, const VerifyOutcome& out, const std::string& timestamp) {
  json doc = {{"command", "verify"},
              {"formula_total", out.formula_total.str()},
              {"oracle_total", out.oracle_total.str()},
              {"oracle_exact", out.oracle_exact},
              {"match", out.match},
              {"instance_fingerprint", job.fingerprint}};
  if (!timestamp.empty()) doc["timestamp"] = timestamp;
  return doc;
}

json group_info_json(const GroupRef& g, const AutReport& r, const std::string& timestamp) {
  const auto classes = conjugacy_classes(*g);
  json cls = json::array();
  for (std::size_t c = 0; c < classes.count(); ++c) {
    cls.push_back({{"id", c},
                   {"size", classes.sizes[c]},
                   {"representative", g->label(classes.reps[c])},
                   {"element_order", g->element_order(classes.reps[c])},
                   {"inverse_class", classes.inverse_class[c]}});
  }
  json doc = {{"command", "group-info"},
              {"order", r.group_order},
              {"center_order", r.center_order},
              {"class_count", r.class_count},
              {"abelian", g->is_abelian()},
              {"ambivalent", r.ambivalent ? "yes" : "no"},
              {"quasi_ambivalent", std::string(to_string(r.quasi_ambivalent.verdict))},
              {"inn_order", r.inn_order},
              {"class_inverting_automorphisms", r.class_inverting_count},
              {"charge_conjugation_candidates", r.charge_conjugation_candidates.size()},
              {"enumeration_complete", r.enumeration_complete},
              {"search_nodes", r.search_nodes},
              {"classes", cls}};
  doc["aut_order"] = r.aut_order ? json(*r.aut_order) : json(nullptr);
  doc["out_order"] = r.out_order ? json(*r.out_order) : json(nullptr);
  if (r.quasi_ambivalent.witness) {
    const auto& w = *r.quasi_ambivalent.witness;
    json img = json::array();
    for (Element x = 0; x < g->order(); ++x) img.push_back(w(x));
    doc["witness"] = {{"image", img}, {"inner", is_inner(w)}};
  }
  if (!timestamp.empty()) doc["timestamp"] = timestamp;
  return doc;
}

std::string render(const json& report, OutputFormat format) {
  if (format == OutputFormat::json) return report.dump(2) + "\n";
  std::ostringstream os;
  const json* table = nullptr;
  if (format == OutputFormat::csv) {
    os << "key,value\n";
    for (const auto& [k, v] : report.items()) {
      if (v.is_array() && !v.empty() && v.front().is_object()) {
        table = &v;
        continue;
      }
      os << csv_field(k) << "," << csv_field(scalar_text(v)) << "\n";
    }
    if (table) {
      os << "\n";
      std::vector<std::string> cols;
      for (const auto& [k, v] : table->front().items()) cols.push_back(k);
      for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << csv_field(cols[i]);
      os << "\n";
      for (const auto& row : *table) {
        for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << csv_field(scalar_text(row.value(cols[i], json())));
        os << "\n";
      }
    }
    return os.str();
  }
  for (const auto& [k, v] : report.items()) {
    if (v.is_array() && !v.empty() && v.front().is_object()) {
      os << k << ":\n";
      for (const auto& row : v) {
        os << " ";
        for (const auto& [rk, rv] : row.items()) os << " " << rk << "=" << scalar_text(rv);
        os << "\n";
      }
    } else {
      os << k << ": " << scalar_text(v) << "\n";
    }
  }
  return os.str();
}

}  // namespace gaugecount
