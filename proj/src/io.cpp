#include "sparkcx/io.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "sparkcx/selftest.hpp"

namespace sparkcx {
namespace io {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// .scx

SimplicialComplex parse_scx(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  long line_no = 0;
  long n_vertices = -1;
  bool header = false;
  std::vector<std::vector<int>> simplices;
  std::set<std::vector<int>> seen;
  while (std::getline(is, line)) {
    ++line_no;
    auto toks = split_ws(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (!header) {
      if (toks.size() != 2 || toks[0] != "scx" || toks[1] != "v1")
        throw parse_error("expected header 'scx v1'", line_no);
      header = true;
      continue;
    }
    if (toks[0] == "vertices") {
      if (toks.size() != 2) throw parse_error("vertices takes one count", line_no);
      try {
        n_vertices = std::stol(toks[1]);
      } catch (...) {
        throw parse_error("malformed vertex count", line_no);
      }
      if (n_vertices < 0) throw parse_error("negative vertex count", line_no);
    } else if (toks[0] == "simplex") {
      if (n_vertices < 0) throw parse_error("simplex before vertices", line_no);
      std::vector<int> s;
      for (size_t i = 1; i < toks.size(); ++i) {
        long v;
        try {
          v = std::stol(toks[i]);
        } catch (...) {
          throw parse_error("malformed vertex index", line_no);
        }
        if (v < 0 || v >= n_vertices) throw parse_error("vertex out of range", line_no);
        s.push_back((int)v);
      }
      if (s.empty()) throw parse_error("empty simplex", line_no);
      for (size_t i = 0; i + 1 < s.size(); ++i)
        if (s[i] >= s[i + 1])
          throw parse_error("simplex vertices must strictly increase", line_no);
      if (!seen.insert(s).second) throw parse_error("duplicate simplex", line_no);
      simplices.push_back(std::move(s));
    } else {
      throw parse_error("unknown directive '" + toks[0] + "'", line_no);
    }
  }
  if (!header) throw parse_error("missing header", line_no);
  if (n_vertices < 0) throw parse_error("missing vertices line", line_no);
  return SimplicialComplex::closure(n_vertices, simplices);
}

std::string serialize_scx(const SimplicialComplex& k) {
  std::ostringstream os;
  os << "scx v1\n";
  os << "vertices " << k.n_vertices() << "\n";
  for (const auto& s : k.maximal_simplices()) {
    os << "simplex";
    for (int v : s) os << " " << v;
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// .spc

std::map<std::string, SpcSection> parse_spc(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  long line_no = 0;
  bool header = false;
  std::map<std::string, SpcSection> out;
  SpcSection* cur = nullptr;
  RatMat* mat = nullptr;
  long fill_row = 0;
  while (std::getline(is, line)) {
    ++line_no;
    auto toks = split_ws(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (!header) {
      if (toks.size() != 2 || toks[0] != "spc" || toks[1] != "v1")
        throw parse_error("expected header 'spc v1'", line_no);
      header = true;
      continue;
    }
    if (toks[0] == "section") {
      if (toks.size() != 7 || toks[2] != "coeff" || toks[4] != "degrees")
        throw parse_error("section NAME coeff q|z degrees KMIN KMAX", line_no);
      SpcSection s;
      s.name = toks[1];
      if (toks[3] == "q")
        s.coeff = Coeff::Q;
      else if (toks[3] == "z")
        s.coeff = Coeff::Z;
      else
        throw parse_error("coeff must be q or z", line_no);
      try {
        s.kmin = std::stoi(toks[5]);
        s.kmax = std::stoi(toks[6]);
      } catch (...) {
        throw parse_error("malformed degree range", line_no);
      }
      cur = &out.emplace(s.name, std::move(s)).first->second;
      mat = nullptr;
    } else if (toks[0] == "deg") {
      if (!cur) throw parse_error("deg before section", line_no);
      if (toks.size() != 6 || toks[2] != "rows" || toks[4] != "cols")
        throw parse_error("deg K rows R cols C", line_no);
      int k;
      long r, c;
      try {
        k = std::stoi(toks[1]);
        r = std::stol(toks[3]);
        c = std::stol(toks[5]);
      } catch (...) {
        throw parse_error("malformed deg block", line_no);
      }
      mat = &cur->blocks.emplace(k, RatMat(r, c)).first->second;
      fill_row = 0;
    } else {
      if (!mat) throw parse_error("matrix row outside a deg block", line_no);
      if (fill_row >= mat->rows()) throw parse_error("too many matrix rows", line_no);
      if ((long)toks.size() != mat->cols())
        throw parse_error("row arity mismatch", line_no);
      for (long j = 0; j < mat->cols(); ++j) {
        try {
          mat->at(fill_row, j) = parse_rat(toks[j]);
        } catch (const input_error& e) {
          throw parse_error(e.what(), line_no);
        }
      }
      ++fill_row;
    }
  }
  if (!header) throw parse_error("missing header", line_no);
  return out;
}

CochainComplex complex_from_section(const SpcSection& s) {
  std::vector<long> ranks;
  std::vector<RatMat> diffs;
  // infer ranks from block shapes
  for (int k = s.kmin; k <= s.kmax; ++k) {
    auto it = s.blocks.find(k);
    if (it == s.blocks.end()) throw input_error("missing deg block " + std::to_string(k));
    ranks.push_back(it->second.cols());
  }
  for (int k = s.kmin; k <= s.kmax; ++k) diffs.push_back(s.blocks.at(k));
  return CochainComplex(s.coeff, s.kmin, std::move(ranks), std::move(diffs));
}

// ---------------------------------------------------------------------------
// .spk

SpkData parse_spk(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  long line_no = 0;
  bool header = false, have_deg = false;
  SpkData out;
  while (std::getline(is, line)) {
    ++line_no;
    auto toks = split_ws(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (!header) {
      if (toks.size() != 2 || toks[0] != "spk" || toks[1] != "v1")
        throw parse_error("expected header 'spk v1'", line_no);
      header = true;
      continue;
    }
    if (toks[0] == "degree") {
      if (toks.size() != 2) throw parse_error("degree takes one value", line_no);
      out.degree = std::stoi(toks[1]);
      have_deg = true;
    } else if (toks[0] == "a") {
      for (size_t i = 1; i < toks.size(); ++i) out.a.push_back(parse_rat(toks[i]));
    } else if (toks[0] == "r") {
      for (size_t i = 1; i < toks.size(); ++i) out.r.push_back(parse_int(toks[i]));
    } else {
      throw parse_error("unknown directive '" + toks[0] + "'", line_no);
    }
  }
  if (!header || !have_deg) throw parse_error("missing header or degree", line_no);
  return out;
}

std::string serialize_spk(const Spark& s) {
  std::ostringstream os;
  os << "spk v1\ndegree " << s.k << "\na";
  for (const auto& q : s.a) os << " " << to_string(q);
  os << "\nr";
  for (const auto& x : s.r) os << " " << to_string(x);
  os << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// .lbd

DiscreteLineBundle parse_lbd(const std::string& text, const CechModelPtr& model) {
  std::istringstream is(text);
  std::string line;
  long line_no = 0;
  bool header = false;
  DiscreteLineBundle l = trivial_bundle(model);
  const auto& nerve = model->cover->nerve;
  while (std::getline(is, line)) {
    ++line_no;
    auto toks = split_ws(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (!header) {
      if (toks.size() != 2 || toks[0] != "lbd" || toks[1] != "v1")
        throw parse_error("expected header 'lbd v1'", line_no);
      header = true;
      continue;
    }
    if (toks[0] == "g") {
      if (toks.size() < 3) throw parse_error("g ALPHA BETA entries...", line_no);
      int a = std::stoi(toks[1]), b = std::stoi(toks[2]);
      long eid = nerve.index_of(1, {std::min(a, b), std::max(a, b)});
      if (eid < 0) throw parse_error("no such overlap", line_no);
      if ((long)toks.size() - 3 != (long)l.g[eid].size())
        throw parse_error("g arity mismatch", line_no);
      for (size_t i = 3; i < toks.size(); ++i) l.g[eid][i - 3] = parse_rat(toks[i]);
    } else if (toks[0] == "a") {
      if (toks.size() < 2) throw parse_error("a ALPHA entries...", line_no);
      long al = std::stol(toks[1]);
      if (al < 0 || al >= (long)l.a.size()) throw parse_error("no such member", line_no);
      if ((long)toks.size() - 2 != (long)l.a[al].size())
        throw parse_error("a arity mismatch", line_no);
      for (size_t i = 2; i < toks.size(); ++i) l.a[al][i - 2] = parse_rat(toks[i]);
    } else {
      throw parse_error("unknown directive '" + toks[0] + "'", line_no);
    }
  }
  if (!header) throw parse_error("missing header", line_no);
  return l;
}

std::string serialize_lbd(const DiscreteLineBundle& l) {
  std::ostringstream os;
  os << "lbd v1\n";
  const auto& nerve = l.model->cover->nerve;
  for (long e = 0; e < (long)l.g.size(); ++e) {
    const auto& ev = nerve.simplex(1, e);
    os << "g " << ev[0] << " " << ev[1];
    for (const auto& q : l.g[e]) os << " " << to_string(q);
    os << "\n";
  }
  for (long al = 0; al < (long)l.a.size(); ++al) {
    os << "a " << al;
    for (const auto& q : l.a[al]) os << " " << to_string(q);
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// report

void Report::add(const std::string& key, const std::string& value) {
  sections.emplace_back(key, value);
}

std::string Report::to_string() const {
  std::ostringstream os;
  os << "sparkcx report\n";
  os << "command: " << command << "\n";
  os << "seed: " << seed << "\n";
  os << "budget: " << budget << "\n";
  for (const auto& [k, v] : sections) {
    if (v.find('\n') == std::string::npos) {
      os << k << ": " << v << "\n";
    } else {
      os << k << ":\n";
      std::istringstream vs(v);
      std::string line;
      while (std::getline(vs, line)) os << "  " << line << "\n";
    }
  }
  os << "status: " << (exit_code == 0 ? "ok" : (exit_code == 1 ? "check-failed" : "input-error"))
     << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// command line

namespace {

struct CliState {
  std::string command;
  std::vector<std::string> positional;
  uint64_t seed = 0;
  long budget = 64;
  Coeff coeff = Coeff::Z;
  int level = 1;
  std::string out;
  bool dump_fixtures = false;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw input_error("cannot open file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

bool is_fixture(const std::string& name) {
  for (const auto& n : fixtures::names())
    if (n == name) return true;
  return false;
}

std::shared_ptr<const SimplicialComplex> resolve_complex(const std::string& arg) {
  if (is_fixture(arg)) return fixtures::get(arg).complex;
  return std::make_shared<SimplicialComplex>(parse_scx(read_file(arg)));
}

// fixture gets its verified cover; a raw .scx gets the star cover
std::pair<std::shared_ptr<const SimplicialComplex>, std::shared_ptr<const CoverData>>
resolve_covered(const std::string& arg) {
  if (is_fixture(arg)) {
    const auto& f = fixtures::get(arg);
    return {f.complex, f.cover};
  }
  auto k = std::make_shared<SimplicialComplex>(parse_scx(read_file(arg)));
  auto c = std::make_shared<CoverData>(star_cover(k));
  return {k, c};
}

CechModelPtr resolve_model(const std::string& arg) {
  if (is_fixture(arg)) return fixtures::model(arg);
  auto [k, c] = resolve_covered(arg);
  return cech_spark_complex(k, c);
}

Spark spark_from_file(const CechModelPtr& m, const std::string& path) {
  SpkData d = parse_spk(read_file(path));
  return make_spark(m->S, d.degree, d.a, d.r);
}

std::string descriptor_line(const CochainComplex& c, int k) {
  return cohomology_descriptor(c, k).to_string();
}

void emit(const Report& rep, const CliState& cli) {
  std::string text = rep.to_string();
  if (cli.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cli.out);
    if (!f) throw input_error("cannot write: " + cli.out);
    f << text;
  }
}

int cmd_cohomology(const CliState& cli) {
  if (cli.positional.empty()) throw input_error("cohomology needs a complex");
  auto k = resolve_complex(cli.positional[0]);
  auto c = k->cochain_complex(cli.coeff);
  Report rep;
  rep.command = "cohomology " + cli.positional[0];
  rep.seed = cli.seed;
  rep.budget = cli.budget;
  for (int q = 0; q <= std::max(k->dim(), 0); ++q)
    rep.add("H^" + std::to_string(q), descriptor_line(*c, q));
  emit(rep, cli);
  return 0;
}

int cmd_check_cover(const CliState& cli) {
  if (cli.positional.empty()) throw input_error("check-cover needs a complex");
  auto [k, cov] = resolve_covered(cli.positional[0]);
  Report rep;
  rep.command = "check-cover " + cli.positional[0];
  rep.seed = cli.seed;
  rep.budget = cli.budget;
  rep.add("members", std::to_string(cov->members.size()));
  rep.add("nerve_dim", std::to_string(cov->nerve.dim()));
  rep.add("covers", cov->covers ? "yes" : "no");
  rep.add("good", cov->good() ? "yes" : "no");
  if (!cov->good()) {
    rep.add("witness", cov->describe_bad());
    rep.exit_code = 1;
  }
  emit(rep, cli);
  return rep.exit_code;
}

int cmd_build_model(const CliState& cli) {
  if (cli.positional.size() < 2) throw input_error("build-model (cech|hyper|level-p) <complex>");
  const std::string& kind = cli.positional[0];
  Report rep;
  rep.command = "build-model " + kind + " " + cli.positional[1];
  rep.seed = cli.seed;
  rep.budget = cli.budget;
  auto describe = [&](const SparkComplex& s, const std::string& prefix) {
    std::ostringstream os;
    os << "F ranks:";
    for (int k = s.F->kmin(); k <= s.F->kmax(); ++k) os << " " << s.F->rank(k);
    os << "; E ranks:";
    for (int k = s.E->kmin(); k <= s.E->kmax(); ++k) os << " " << s.E->rank(k);
    os << "; I ranks:";
    for (int k = s.I->kmin(); k <= s.I->kmax(); ++k) os << " " << s.I->rank(k);
    rep.add(prefix, os.str());
  };
  if (kind == "cech") {
    auto m = resolve_model(cli.positional[1]);
    describe(*m->S, "model");
    rep.add("validated", "yes");
  } else if (kind == "hyper") {
    auto m = resolve_model(cli.positional[1]);
    HypersparkModel h = hyperspark_complex(m);
    describe(*h.S, "model");
    rep.add("quasi_iso", "validated");
    rep.add("axiom_i", "waived (enlargement)");
  } else if (kind == "level-p") {
    auto m = resolve_model(cli.positional[1]);
    LevelModel lm = level_p_spark_complex(m, cli.level);
    describe(*lm.S, "model");
    rep.add("level", std::to_string(cli.level));
    rep.add("validated", "yes");
  } else {
    throw input_error("unknown model kind: " + kind);
  }
  emit(rep, cli);
  return 0;
}

int cmd_check_axioms(const CliState& cli) {
  if (cli.positional.empty()) throw input_error("check-axioms needs a complex");
  Report rep;
  rep.command = "check-axioms " + cli.positional[0];
  rep.seed = cli.seed;
  rep.budget = cli.budget;
  try {
    auto m = resolve_model(cli.positional[0]);
    (void)m;
    rep.add("axioms", "(i) ok, (ii) ok, (iii) ok");
  } catch (const spark_error& e) {
    rep.add("violation", e.what());
    if (e.witness) {
      std::ostringstream os;
      os << "axiom " << e.witness->axiom << " degree " << e.witness->degree << ":";
      for (const auto& x : e.witness->integer_witness) os << " " << to_string(x);
      rep.add("witness", os.str());
    }
    rep.exit_code = 1;
  }
  emit(rep, cli);
  return rep.exit_code;
}

int cmd_grid(const CliState& cli) {
  if (cli.positional.empty()) throw input_error("grid needs a complex");
  auto m = resolve_model(cli.positional[0]);
  Report rep;
  rep.command = "grid " + cli.positional[0];
  rep.seed = cli.seed;
  rep.budget = cli.budget;
  bool ok = true;
  for (int k = -1; k <= 2; ++k) {
    GridReport g = grid(m->S, k, cli.budget, cli.seed);
    rep.add("degree " + std::to_string(k), g.to_string());
    ok = ok && g.all_passed();
  }
  rep.exit_code = ok ? 0 : 1;
  emit(rep, cli);
  return rep.exit_code;
}

int cmd_spark_eq(const CliState& cli) {
  if (cli.positional.size() < 3) throw input_error("spark-eq <complex> <a.spk> <b.spk>");
  auto m = resolve_model(cli.positional[0]);
  Spark s1 = spark_from_file(m, cli.positional[1]);
  Spark s2 = spark_from_file(m, cli.positional[2]);
  Report rep;
  rep.command = "spark-eq " + cli.positional[0];
  rep.seed = cli.seed;
  rep.budget = cli.budget;
  auto w = sparks_equivalent(s1, s2);
  rep.add("equivalent", w ? "yes" : "no");
  if (w) {
    std::ostringstream os;
    os << "b:";
    for (const auto& q : w->b) os << " " << to_string(q);
    os << "; s:";
    for (const auto& x : w->s) os << " " << to_string(x);
    rep.add("witness", os.str());
    rep.add("witness_recheck", verify_witness(s1, s2, *w) ? "ok" : "FAILED");
  }
  emit(rep, cli);
  return 0;
}

int cmd_product(const CliState& cli) {
  if (cli.positional.size() < 3) throw input_error("product <complex> <a.spk> <b.spk>");
  auto m = resolve_model(cli.positional[0]);
  Spark s1 = spark_from_file(m, cli.positional[1]);
  Spark s2 = spark_from_file(m, cli.positional[2]);
  Spark p = spark_product(*m, s1, s2);
  DeltaRingReport dr = delta_ring_check(*m, s1, s2);
  Report rep;
  rep.command = "product " + cli.positional[0];
  rep.seed = cli.seed;
  rep.budget = cli.budget;
  rep.add("product", serialize_spk(p));
  rep.add("delta_ring", dr.to_string());
  rep.exit_code = (dr.delta1_multiplicative && dr.delta2_multiplicative) ? 0 : 1;
  emit(rep, cli);
  return rep.exit_code;
}

int cmd_push_lift(const CliState& cli, bool is_push) {
  if (cli.positional.size() < 2)
    throw input_error(std::string(is_push ? "push" : "lift") + " <fixture> <s.spk>");
  if (!is_fixture(cli.positional[0]))
    throw input_error("push/lift operate on fixture hyperspark models");
  const HypersparkModel& h = fixtures::hyperspark(cli.positional[0]);
  Report rep;
  rep.command = std::string(is_push ? "push " : "lift ") + cli.positional[0];
  rep.seed = cli.seed;
  rep.budget = cli.budget;
  SpkData d = parse_spk(read_file(cli.positional[1]));
  if (is_push) {
    Spark s = make_spark(h.qiso.small, d.degree, d.a, d.r);
    rep.add("pushed", serialize_spk(push(h.qiso, s)));
  } else {
    Spark t = make_spark(h.qiso.big, d.degree, d.a, d.r);
    LiftResult lr = lift(h.qiso, t);
    rep.add("lifted", serialize_spk(lr.small));
    std::ostringstream os;
    os << "b:";
    for (const auto& q : lr.big_witness.b) os << " " << to_string(q);
    os << "; s:";
    for (const auto& x : lr.big_witness.s) os << " " << to_string(x);
    rep.add("witness", os.str());
  }
  emit(rep, cli);
  return 0;
}

int cmd_pullback(const CliState& cli) {
  if (cli.positional.size() < 3) throw input_error("pullback <src> <dst> <s.spk>");
  const std::string& sname = cli.positional[0];
  const std::string& dname = cli.positional[1];
  auto src = fixtures::model(sname);
  auto dst = fixtures::model(dname);
  SimplicialMap f;
  f.src = src->K;
  f.dst = dst->K;
  if (dname == "point") {
    f.vertex_image.assign(src->K->n_vertices(), 0);
  } else if (sname == "circle12" && dname == "circle6") {
    for (int i = 0; i < 12; ++i) f.vertex_image.push_back(i % 6);
  } else {
    throw input_error("pullback: no built-in map " + sname + " -> " + dname);
  }
  ModelMap mm = star_model_pullback(f, src, dst);
  Spark s = spark_from_file(dst, cli.positional[2]);
  Report rep;
  rep.command = "pullback " + sname + " <- " + dname;
  rep.seed = cli.seed;
  rep.budget = cli.budget;
  rep.add("pullback", serialize_spk(pullback(mm, s)));
  emit(rep, cli);
  return 0;
}

int cmd_bundle(const CliState& cli) {
  if (cli.positional.size() < 2) throw input_error("bundle <subcommand> <fixture> ...");
  const std::string& sub = cli.positional[0];
  auto m = resolve_model(cli.positional[1]);
  Report rep;
  rep.command = "bundle " + sub + " " + cli.positional[1];
  rep.seed = cli.seed;
  rep.budget = cli.budget;
  auto load = [&](size_t idx) {
    DiscreteLineBundle l = parse_lbd(read_file(cli.positional.at(idx)), m);
    l.validate();
    return l;
  };
  if (sub == "to-spark") {
    rep.add("spark", serialize_spk(bundle_to_spark(load(2))));
  } else if (sub == "chern") {
    IntVec c = chern_class(load(2));
    std::ostringstream os;
    for (size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << to_string(c[i]);
    rep.add("chern", os.str());
  } else if (sub == "curvature") {
    RatVec c = curvature(load(2));
    std::ostringstream os;
    for (size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << to_string(c[i]);
    rep.add("curvature", os.str());
  } else if (sub == "tensor") {
    rep.add("tensor", serialize_lbd(tensor(load(2), load(3))));
  } else if (sub == "holonomy") {
    DiscreteLineBundle l = load(2);
    IntVec z = fixtures::circle_cycle(*m->K);
    rep.add("holonomy", to_string(holonomy(l, z)));
  } else if (sub == "from-chern") {
    IntVec coords;
    for (size_t i = 2; i < cli.positional.size(); ++i)
      coords.push_back(parse_int(cli.positional[i]));
    rep.add("bundle", serialize_lbd(bundle_from_chern(m, coords)));
  } else if (sub == "gauge-eq") {
    rep.add("gauge_equivalent", gauge_equivalent(load(2), load(3)) ? "yes" : "no");
  } else {
    throw input_error("unknown bundle subcommand: " + sub);
  }
  emit(rep, cli);
  return 0;
}

int cmd_selftest(const CliState& cli) {
  Report rep;
  rep.command = "selftest";
  rep.seed = cli.seed;
  rep.budget = cli.budget;
  if (cli.dump_fixtures) {
    for (const auto& n : fixtures::names()) {
      const auto& f = fixtures::get(n);
      std::ofstream file(n + ".scx");
      file << "# cover: " << f.cover_kind << "\n" << serialize_scx(*f.complex);
      rep.add("dumped", n + ".scx (cover " + f.cover_kind + ")");
    }
    emit(rep, cli);
    return 0;
  }
  auto results = selftest::run_all(cli.seed, cli.budget);
  bool ok = true;
  for (const auto& r : results) {
    rep.add(r.name, std::string(r.passed ? "pass" : "FAIL") +
                        (r.detail.empty() ? "" : " - " + r.detail));
    ok = ok && r.passed;
  }
  rep.exit_code = ok ? 0 : 1;
  emit(rep, cli);
  return rep.exit_code;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CliState cli;
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty()) {
    std::cout << "usage: sparkcx <command> [args] [--seed N] [--budget N] "
                 "[--coeff z|q] [--level P] [--out PATH]\n"
                 "commands: cohomology check-cover build-model check-axioms grid\n"
                 "          spark-eq product push lift pullback bundle selftest\n";
    return 2;
  }
  cli.command = args[0];
  try {
    for (size_t i = 1; i < args.size(); ++i) {
      const std::string& a = args[i];
      auto need_value = [&]() -> const std::string& {
        if (i + 1 >= args.size()) throw input_error("flag " + a + " needs a value");
        return args[++i];
      };
      if (a == "--seed")
        cli.seed = std::stoull(need_value());
      else if (a == "--budget")
        cli.budget = std::stol(need_value());
      else if (a == "--coeff") {
        std::string v = need_value();
        if (v == "z")
          cli.coeff = Coeff::Z;
        else if (v == "q")
          cli.coeff = Coeff::Q;
        else
          throw input_error("--coeff must be z or q");
      } else if (a == "--level")
        cli.level = std::stoi(need_value());
      else if (a == "--out")
        cli.out = need_value();
      else if (a == "--dump-fixtures")
        cli.dump_fixtures = true;
      else if (a.rfind("--", 0) == 0)
        throw input_error("unknown flag: " + a);
      else
        cli.positional.push_back(a);
    }

    if (cli.command == "cohomology") return cmd_cohomology(cli);
    if (cli.command == "check-cover") return cmd_check_cover(cli);
    if (cli.command == "build-model") return cmd_build_model(cli);
    if (cli.command == "check-axioms") return cmd_check_axioms(cli);
    if (cli.command == "grid") return cmd_grid(cli);
    if (cli.command == "spark-eq") return cmd_spark_eq(cli);
    if (cli.command == "product") return cmd_product(cli);
    if (cli.command == "push") return cmd_push_lift(cli, true);
    if (cli.command == "lift") return cmd_push_lift(cli, false);
    if (cli.command == "pullback") return cmd_pullback(cli);
    if (cli.command == "bundle") return cmd_bundle(cli);
    if (cli.command == "selftest") return cmd_selftest(cli);
    throw input_error("unknown command: " + cli.command);
  } catch (const parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const cover_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const spark_error& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace io
}  // namespace sparkcx
