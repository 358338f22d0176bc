// Command-line front end: verify certificates, re-check them against the
// matrix and grid oracles, search for new ones, and pretty-print the
// compiled equation systems. Reports go to stdout as human tables and,
// with --json PATH, to disk as schema-tagged JSON ("weylks-report/1").
//
// Exit codes: 0 for any completed run (contradiction and consistent are both
// facts, found/absent/exhausted are all outcomes), 1 when an oracle claim
// misses its tolerance or something operational breaks, 2 for malformed
// input or flag validation.

#include <chrono>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "weylks/assignment.hpp"
#include "weylks/certificate.hpp"
#include "weylks/grid_oracle.hpp"
#include "weylks/json_io.hpp"
#include "weylks/matrix_oracle.hpp"
#include "weylks/search.hpp"
#include "weylks/tolerances.hpp"

using nlohmann::json;
using namespace weylks;

namespace {

constexpr const char* kReportFormatTag = "weylks-report/1";

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double env_tolerance(const char* name, double fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const double x = std::strtod(v, &end);
  if (end == v || *end != '\0' || !(x > 0))
    throw parse_error(std::string(name) + " must be a positive number, got '" + v + "'");
  return x;
}

std::vector<Rat> parse_theta_list(const std::string& text) {
  std::vector<Rat> out;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    while (!item.empty() && item.front() == ' ') item.erase(0, 1);
    while (!item.empty() && item.back() == ' ') item.pop_back();
    out.push_back(parse_rational(item));
  }
  if (out.empty()) throw parse_error("--theta needs a comma-separated list of rationals");
  return out;
}

std::string theta_text(const DofSystemPtr& sys) {
  std::string s;
  for (std::size_t j = 0; j < sys->n_dof(); ++j) {
    if (j) s += ", ";
    s += rational_to_string(sys->theta(j));
  }
  return s;
}

std::string fmt_residual(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", r);
  return buf;
}

std::string fmt_complex(std::complex<double> z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f%+.6fi", z.real(), z.imag());
  return buf;
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json int_json(const Int& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();  // witnesses this large never happen here, but stay lossless
}

struct StageClock {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  json stages = json::object();
  void lap(const char* name) {
    const auto t1 = std::chrono::steady_clock::now();
    stages[name] = std::chrono::duration<double, std::milli>(t1 - t0).count();
    t0 = t1;
  }
};

// ------------------------------------------------------------------ inputs

struct CertSource {
  Certificate cert;
  json input_info;
  std::string label;
};

CertSource resolve_cert(const std::string& path, const std::string& builtin,
                        const std::string& theta_flag) {
  if (path.empty() == builtin.empty())
    throw parse_error("give exactly one certificate source: a file path or --builtin NAME");

  CertSource src;
  if (!path.empty()) {
    if (!theta_flag.empty())
      throw parse_error("--theta applies to --builtin certificates; files carry their own twists");
    const std::string bytes = read_file_bytes(path);
    json j;
    try {
      j = json::parse(bytes);
    } catch (const json::exception& e) {
      throw parse_error("certificate file '" + path + "': " + e.what());
    }
    src.cert = certificate_from_json(j);
    src.input_info = {{"kind", "file"}, {"path", path}, {"fnv1a64", hex64(fnv1a64(bytes))}};
    src.label = "file " + path;
  } else {
    std::vector<Rat> theta;
    if (!theta_flag.empty()) theta = parse_theta_list(theta_flag);
    if (builtin == "peres2")
      src.cert = builtin_peres2(std::move(theta));
    else if (builtin == "mermin3")
      src.cert = builtin_mermin3(std::move(theta));
    else
      throw parse_error("unknown builtin '" + builtin + "' (available: peres2, mermin3)");
    const std::string canon = certificate_to_json(src.cert).dump();
    src.input_info = {{"kind", "builtin"}, {"name", builtin}, {"fnv1a64", hex64(fnv1a64(canon))}};
    src.label = "builtin " + builtin;
  }
  return src;
}

void write_report(const json& rep, const std::string& path) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw error("cannot open '" + path + "' for writing");
  out << rep.dump(2) << '\n';
  if (!out) throw error("write to '" + path + "' failed");
}

json report_head(const std::string& command_echo, const json& inputs) {
  json rep;
  rep["format"] = kReportFormatTag;
  rep["command"] = command_echo;
  rep["inputs"] = inputs;
  return rep;
}

// --------------------------------------------------------------- rendering

// one signed term per nonzero column entry, e.g. "y[U1 V2] - y[U2^-1]"
std::string row_equation(const CompiledSystem& cs, std::size_t r) {
  std::string lhs;
  for (std::size_t c = 0; c < cs.E.cols; ++c) {
    const Int& v = cs.E.at(r, c);
    if (v == 0) continue;
    const Int a = abs(v);
    std::string term = (a == 1 ? "" : a.get_str() + " ") + "y[" + to_string(cs.columns[c]) + "]";
    if (lhs.empty())
      lhs = (v < 0 ? "-" : "") + term;
    else
      lhs += (v < 0 ? " - " : " + ") + term;
  }
  if (lhs.empty()) lhs = "0";
  return lhs + " = " + rational_to_string(cs.phi[r]) + "  (mod 2)";
}

json trace_json(const Certificate& cert, const CompiledSystem& cs) {
  json arr = json::array();
  for (std::size_t i = 0; i < cert.contexts.size(); ++i) {
    const auto& prod = cs.context_products[i];
    arr.push_back({{"members", cert.contexts[i]},
                   {"product", to_string(prod)},
                   {"phase", phase_to_string(prod.phase())},
                   {"equation", row_equation(cs, i)}});
  }
  return arr;
}

void print_trace(const Certificate& cert, const CompiledSystem& cs, bool with_equations) {
  for (std::size_t i = 0; i < cert.contexts.size(); ++i) {
    std::string members;
    for (const auto& id : cert.contexts[i]) {
      if (!members.empty()) members += " * ";
      members += id;
    }
    std::printf("  context %zu: %s = %s\n", i + 1, members.c_str(),
                to_string(cs.context_products[i]).c_str());
    if (with_equations) std::printf("      %s\n", row_equation(cs, i).c_str());
  }
}

// columns of the compiled system keyed by exponent pattern, for mapping a
// monomial id to its assigned value
std::map<std::vector<Int>, std::size_t> column_index(const CompiledSystem& cs) {
  std::map<std::vector<Int>, std::size_t> out;
  for (std::size_t c = 0; c < cs.columns.size(); ++c) out.emplace(cs.columns[c].exponent_key(), c);
  return out;
}

// ------------------------------------------------------------------ verify

int run_verify(const std::string& command_echo, const CertSource& src, const std::string& json_path,
               bool timings) {
  StageClock clock;
  const Certificate& cert = src.cert;
  const CompiledSystem cs = compile_certificate(cert);
  clock.lap("compile_ms");
  const Analysis an = analyze(cs);
  clock.lap("analyze_ms");

  std::printf("certificate: %s  (%zu dofs, theta %s)\n", src.label.c_str(),
              cert.system->n_dof(), theta_text(cert.system).c_str());
  std::printf("  %zu monomials, %zu contexts -> %zu columns, %zu rows\n\n", cert.monomials.size(),
              cert.contexts.size(), cs.columns.size(), cs.E.rows);
  print_trace(cert, cs, false);

  json rep = report_head(command_echo, json::array({src.input_info}));
  rep["certificate"] = {{"dofs", cert.system->n_dof()},
                        {"monomials", cert.monomials.size()},
                        {"contexts", cert.contexts.size()}};
  rep["system"] = {{"columns", cs.columns.size()}, {"rows", cs.E.rows}};
  rep["trace"] = trace_json(cert, cs);

  if (an.contradiction) {
    const Witness& w = *an.witness;
    std::printf("\nstatus: contradiction\n");
    std::printf("  accumulated phase: %s\n", phase_to_string(w.accumulated).c_str());
    std::printf("  rows combined (coefficient * row):\n");
    json wrows = json::array();
    json coeffs = json::array();
    for (std::size_t r = 0; r < w.row_coeffs.size(); ++r) {
      coeffs.push_back(int_json(w.row_coeffs[r]));
      if (w.row_coeffs[r] == 0) continue;
      const auto& row = cs.rows[r];
      if (row.kind == CompiledRow::Kind::context) {
        std::printf("    %s * context %zu\n", w.row_coeffs[r].get_str().c_str(),
                    row.context_index + 1);
        wrows.push_back({{"kind", "context"},
                         {"context", row.context_index},
                         {"coeff", int_json(w.row_coeffs[r])}});
      } else {
        std::printf("    %s * link  y[%s] + y[%s]\n", w.row_coeffs[r].get_str().c_str(),
                    to_string(cs.columns[row.col_a]).c_str(),
                    to_string(cs.columns[row.col_b]).c_str());
        wrows.push_back({{"kind", "link"},
                         {"columns", json::array({to_string(cs.columns[row.col_a]),
                                                  to_string(cs.columns[row.col_b])})},
                         {"coeff", int_json(w.row_coeffs[r])}});
      }
    }
    std::printf("  every y-term cancels, the right side stays %s: no value assignment exists\n",
                phase_to_string(w.accumulated).c_str());
    rep["status"] = "contradiction";
    rep["witness"] = {{"row_coeffs", coeffs},
                      {"accumulated", phase_to_string(w.accumulated)},
                      {"rows", wrows}};
  } else {
    const auto cols = column_index(cs);
    json assignment = json::object();
    std::printf("\nstatus: consistent\n  assignment:\n");
    for (const auto& [id, w] : cert.monomials) {
      Rat q = w.phase().q();
      if (!w.exponents_zero()) {
        const auto it = cols.find(w.exponent_key());
        if (it == cols.end()) {
          // named but never used in a context: nothing constrains it
          std::printf("    [%s] = free\n", id.c_str());
          assignment[id] = "free";
          continue;
        }
        q += (*an.values)[it->second];
      }
      const std::string value = phase_to_string(PhaseExp(q));
      std::printf("    [%s] = %s\n", id.c_str(), value.c_str());
      assignment[id] = value;
    }
    rep["status"] = "consistent";
    rep["assignment"] = assignment;
  }

  if (timings) {
    clock.lap("report_ms");
    rep["timings"] = clock.stages;
  }
  write_report(rep, json_path);
  return 0;
}

// ------------------------------------------------------------------ oracle

struct ClaimTable {
  json rows = json::array();
  double max_residual = 0;
  bool all_pass = true;

  void add(json row, double residual, bool pass) {
    row["residual"] = residual;
    row["pass"] = pass;
    rows.push_back(std::move(row));
    max_residual = std::max(max_residual, residual);
    all_pass = all_pass && pass;
  }
};

int run_oracle_matrix(const std::string& command_echo, const CertSource& src,
                      std::size_t max_dim, const std::string& json_path, bool timings) {
  StageClock clock;
  const double tol_alg = env_tolerance("WEYLKS_ALGEBRAIC_TOL", tol::kAlgebraic);
  const Certificate& cert = src.cert;
  const MatrixRep rep = build_rep(cert.system, max_dim);
  clock.lap("build_rep_ms");

  std::printf("matrix oracle: %s, dim %zu (d=%zu per dof), tolerance %g\n", src.label.c_str(),
              rep.dim(), rep.d, tol_alg);

  ClaimTable table;
  for (std::size_t ci = 0; ci < cert.contexts.size(); ++ci) {
    const auto& ids = cert.contexts[ci];
    std::vector<Mat> mats;
    WeylMonomial prod = cert.monomial(ids[0]);
    mats.push_back(evaluate(rep, prod));
    for (std::size_t i = 1; i < ids.size(); ++i) {
      const auto& w = cert.monomial(ids[i]);
      mats.push_back(evaluate(rep, w));
      prod = prod * w;
    }

    double comm = 0;
    for (std::size_t i = 0; i < mats.size(); ++i)
      for (std::size_t j = i + 1; j < mats.size(); ++j)
        comm = std::max(comm, commutator_norm(mats[i], mats[j]));
    table.add({{"context", ci}, {"check", "members commute"}}, comm, comm <= tol_alg);

    Mat lhs = mats[0];
    for (std::size_t i = 1; i < mats.size(); ++i) lhs = lhs * mats[i];
    const double res = (lhs - evaluate(rep, prod)).cwiseAbs().maxCoeff();
    table.add({{"context", ci}, {"check", "product matches " + to_string(prod)}}, res,
              res <= tol_alg);

    std::printf("  context %zu: commute %-10s product %-10s %s\n", ci + 1,
                fmt_residual(comm).c_str(), fmt_residual(res).c_str(), to_string(prod).c_str());
  }
  clock.lap("claims_ms");

  std::printf("status: %s (max residual %s)\n", table.all_pass ? "pass" : "FAIL",
              fmt_residual(table.max_residual).c_str());

  json rep_json = report_head(command_echo, json::array({src.input_info}));
  rep_json["params"] = {{"dim", rep.dim()}, {"tolerance", tol_alg}};
  rep_json["claims"] = table.rows;
  rep_json["max_residual"] = table.max_residual;
  rep_json["status"] = table.all_pass ? "pass" : "fail";
  if (timings) rep_json["timings"] = clock.stages;
  write_report(rep_json, json_path);
  return table.all_pass ? 0 : 1;
}

GridState random_state(std::mt19937& rng, std::size_t dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  GridState st;
  st.amp.resize(dim);
  for (auto& a : st.amp) a = {gauss(rng), gauss(rng)};
  const double n = st.norm();
  for (auto& a : st.amp) a /= n;
  return st;
}

double max_diff(const GridState& a, const GridState& b) {
  double r = 0;
  for (std::size_t i = 0; i < a.amp.size(); ++i) r = std::max(r, std::abs(a.amp[i] - b.amp[i]));
  return r;
}

int run_oracle_grid_cert(const std::string& command_echo, const CertSource& src, std::size_t N,
                         double period, std::size_t n_states, unsigned seed,
                         const std::string& json_path, bool timings) {
  StageClock clock;
  const double tol_alg = env_tolerance("WEYLKS_ALGEBRAIC_TOL", tol::kAlgebraic);
  const Certificate& cert = src.cert;
  GridSpec spec;
  spec.n_dof = cert.system->n_dof();
  spec.N = N;
  spec.L = period;
  const GridBinding b = default_binding(cert.system, spec);
  clock.lap("binding_ms");

  std::size_t dim = 1;
  for (std::size_t j = 0; j < spec.n_dof; ++j) dim *= spec.N;

  std::printf("grid oracle: %s, %zu dofs, N=%zu, %zu random states, seed %u, tolerance %g\n",
              src.label.c_str(), spec.n_dof, spec.N, n_states, seed, tol_alg);

  std::mt19937 rng(seed);
  std::vector<GridState> states;
  states.reserve(n_states);
  for (std::size_t s = 0; s < n_states; ++s) states.push_back(random_state(rng, dim));

  ClaimTable table;
  for (std::size_t ci = 0; ci < cert.contexts.size(); ++ci) {
    const auto& ids = cert.contexts[ci];
    std::vector<const WeylMonomial*> members;
    WeylMonomial prod = cert.monomial(ids[0]);
    members.push_back(&cert.monomial(ids[0]));
    for (std::size_t i = 1; i < ids.size(); ++i) {
      members.push_back(&cert.monomial(ids[i]));
      prod = prod * *members.back();
    }

    double comm = 0, res = 0;
    for (const auto& psi : states) {
      // operators act right to left, so the last member hits the state first
      GridState seq = psi;
      for (std::size_t i = members.size(); i-- > 0;) seq = apply_monomial(b, *members[i], seq);
      res = std::max(res, max_diff(seq, apply_monomial(b, prod, psi)));
      for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          GridState ab = apply_monomial(b, *members[i], apply_monomial(b, *members[j], psi));
          GridState ba = apply_monomial(b, *members[j], apply_monomial(b, *members[i], psi));
          comm = std::max(comm, max_diff(ab, ba));
        }
    }
    table.add({{"context", ci}, {"check", "members commute"}}, comm, comm <= tol_alg);
    table.add({{"context", ci}, {"check", "product matches " + to_string(prod)}}, res,
              res <= tol_alg);
    std::printf("  context %zu: commute %-10s product %-10s %s\n", ci + 1,
                fmt_residual(comm).c_str(), fmt_residual(res).c_str(), to_string(prod).c_str());
  }
  clock.lap("claims_ms");

  std::printf("status: %s (max residual %s)\n", table.all_pass ? "pass" : "FAIL",
              fmt_residual(table.max_residual).c_str());

  json rep = report_head(command_echo, json::array({src.input_info}));
  rep["params"] = {{"grid_N", spec.N}, {"k", b.k},      {"m", b.m},
                   {"states", n_states}, {"seed", seed}, {"tolerance", tol_alg}};
  rep["claims"] = table.rows;
  rep["max_residual"] = table.max_residual;
  rep["status"] = table.all_pass ? "pass" : "fail";
  if (timings) rep["timings"] = clock.stages;
  write_report(rep, json_path);
  return table.all_pass ? 0 : 1;
}

json state_json(const GridState& st) {
  json arr = json::array();
  for (const auto& a : st.amp) arr.push_back(complex_json(a));
  return arr;
}

int run_oracle_grid_epr(const std::string& command_echo, std::size_t N, double period, long x0,
                        bool dump_states, const std::string& json_path, bool timings) {
  StageClock clock;
  const double tol_alg = env_tolerance("WEYLKS_ALGEBRAIC_TOL", tol::kAlgebraic);

  const Certificate cert = builtin_peres2();
  GridSpec spec;
  spec.n_dof = 2;
  spec.N = N;
  spec.L = period;
  const GridBinding b = default_binding(cert.system, spec);
  const GridState delta = make_epr_delta(spec, x0);
  clock.lap("setup_ms");

  std::printf("EPR ridge state on 2 dofs, N=%zu, x0=%ld, binding k=(%ld,%ld) m=(%ld,%ld)\n",
              spec.N, x0, b.k[0], b.k[1], b.m[0], b.m[1]);

  ClaimTable table;
  const auto eigen_row = [&](const char* id) {
    const WeylMonomial& w = cert.monomial(id);
    const EigenFit fit = check_eigenstate(b, w, delta);
    table.add({{"operator", id},
               {"text", to_string(w)},
               {"eigenvalue", complex_json(fit.value)},
               {"claim", "eigenstate"}},
              fit.residual, fit.residual <= tol_alg);
    std::printf("  %-2s = %-28s eigenvalue %s  residual %s\n", id, to_string(w).c_str(),
                fmt_complex(fit.value).c_str(), fmt_residual(fit.residual).c_str());
    return fit.value;
  };
  const auto c = eigen_row("F");
  const auto cp = eigen_row("G");

  const double prod_err = std::abs(c * cp + 1.0);
  table.add({{"check", "eigenvalue product c*c'"},
             {"value", complex_json(c * cp)},
             {"claim", "equals -1"}},
            prod_err, prod_err <= tol_alg);
  std::printf("  c * c' = %s  (distance from -1: %s)\n", fmt_complex(c * cp).c_str(),
              fmt_residual(prod_err).c_str());

  // the cross pairing has no such eigenstate; a residual near 1 is the claim
  const WeylMonomial& cross = cert.monomial("B");
  const EigenFit miss = check_eigenstate(b, cross, delta);
  table.add({{"operator", "B"}, {"text", to_string(cross)}, {"claim", "not an eigenstate"}},
            miss.residual, miss.residual > 0.5);
  std::printf("  B  = %-28s residual %s (not an eigenstate)\n", to_string(cross).c_str(),
              fmt_residual(miss.residual).c_str());

  const double off = momentum_mass_off_antidiagonal(spec, dft(spec, delta));
  table.add({{"check", "momentum mass off q1+q2=0"}}, off, off <= tol_alg);
  std::printf("  momentum mass off q1+q2=0: %s\n", fmt_residual(off).c_str());
  clock.lap("claims_ms");

  std::printf("status: %s\n", table.all_pass ? "pass" : "FAIL");

  json rep = report_head(command_echo, json::array());
  rep["params"] = {{"grid_N", spec.N}, {"x0", x0}, {"k", b.k}, {"m", b.m}, {"tolerance", tol_alg}};
  rep["claims"] = table.rows;
  rep["status"] = table.all_pass ? "pass" : "fail";
  if (dump_states) rep["states"] = json::array({state_json(delta)});
  if (timings) rep["timings"] = clock.stages;
  write_report(rep, json_path);
  return table.all_pass ? 0 : 1;
}

int run_oracle_grid_ghz(const std::string& command_echo, std::size_t N, double period,
                        unsigned seed, bool dump_states, const std::string& json_path,
                        bool timings) {
  StageClock clock;
  const double tol_eig = env_tolerance("WEYLKS_EIGEN_TOL", tol::kEigen);

  auto sys = make_system({Rat(1), Rat(1), Rat(1)});
  GridSpec spec;
  spec.n_dof = 3;
  spec.N = N;
  spec.L = period;
  const GridBinding b = default_binding(std::move(sys), spec);
  const auto states = find_ghz_analogues(b, seed, tol_eig);
  clock.lap("diagonalize_ms");

  double worst_res = 0, worst_prod = 0;
  json rows = json::array();
  for (const auto& g : states) {
    std::complex<double> prod = 1.0;
    json evs = json::array();
    for (const auto& e : g.eigenvalues) {
      prod *= e;
      evs.push_back(complex_json(e));
    }
    worst_res = std::max(worst_res, g.max_residual);
    worst_prod = std::max(worst_prod, std::abs(prod + 1.0));
    json row = {{"eigenvalues", evs}, {"residual", g.max_residual}};
    if (dump_states) row["state"] = state_json(g.state);
    rows.push_back(std::move(row));
  }
  const bool pass = !states.empty() && worst_res <= tol_eig && worst_prod <= tol_eig;

  std::printf("GHZ analogues on 3 dofs, N=%zu, seed %u: %zu joint eigenstates\n", spec.N, seed,
              states.size());
  std::printf("  max residual %s, eigenvalue quadruple products within %s of -1\n",
              fmt_residual(worst_res).c_str(), fmt_residual(worst_prod).c_str());
  std::printf("status: %s\n", pass ? "pass" : "FAIL");

  json rep = report_head(command_echo, json::array());
  rep["params"] = {{"grid_N", spec.N}, {"seed", seed}, {"tolerance", tol_eig}};
  rep["count"] = states.size();
  rep["max_residual"] = worst_res;
  rep["max_product_error"] = worst_prod;
  rep["eigenstates"] = rows;
  rep["status"] = pass ? "pass" : "fail";
  if (timings) rep["timings"] = clock.stages;
  write_report(rep, json_path);
  return pass ? 0 : 1;
}

// ------------------------------------------------------------------ search

int run_search(const std::string& command_echo, const SearchParams& params,
               const std::string& emit_path, const std::string& json_path, bool timings) {
  StageClock clock;
  SearchResult res;
  try {
    res = search_obstruction(params);
  } catch (const parse_error&) {
    throw;
  } catch (const error& e) {
    // everything the search rejects up front is a bad parameter choice
    throw parse_error(e.what());
  }
  clock.lap("search_ms");

  std::string theta_h;
  for (std::size_t j = 0; j < params.n_dof; ++j) {
    if (j) theta_h += ", ";
    theta_h += params.theta.empty() ? "1" : rational_to_string(params.theta[j]);
  }
  std::printf("search over %zu dofs, exponents in [-%ld, %ld], twists %s%s\n", params.n_dof,
              params.max_exponent, params.max_exponent, theta_h.c_str(),
              params.u_only ? ", U-only" : "");
  std::printf("  pool %zu monomials in %zu classes, %zu seed contexts (%zu after symmetry)\n",
              res.stats.pool_size, res.stats.class_count, res.stats.seeds,
              res.stats.seeds_after_symmetry);
  std::printf("  %llu nodes explored%s%s\n",
              static_cast<unsigned long long>(res.stats.nodes),
              res.stats.node_budget_hit ? ", node budget hit" : "",
              res.stats.time_budget_hit ? ", time budget hit" : "");

  const char* status = res.status == SearchStatus::found     ? "found"
                       : res.status == SearchStatus::absent ? "absent"
                                                            : "exhausted";
  json rep = report_head(command_echo, json::array());
  rep["params"] = {{"dofs", params.n_dof},
                   {"max_exponent", params.max_exponent},
                   {"max_context_size", params.max_context_size},
                   {"max_contexts", params.max_contexts},
                   {"node_budget", params.node_budget},
                   {"u_only", params.u_only},
                   {"symmetry", params.use_symmetry}};
  rep["stats"] = {{"pool", res.stats.pool_size},
                  {"classes", res.stats.class_count},
                  {"seeds", res.stats.seeds},
                  {"seeds_after_symmetry", res.stats.seeds_after_symmetry},
                  {"nodes", res.stats.nodes},
                  {"node_budget_hit", res.stats.node_budget_hit},
                  {"time_budget_hit", res.stats.time_budget_hit}};
  rep["status"] = status;

  if (res.status == SearchStatus::found) {
    const Certificate& cert = *res.certificate;
    std::printf("status: found (%zu contexts)\n", res.contexts_used);
    for (const auto& [id, w] : cert.monomials)
      std::printf("  %s = %s\n", id.c_str(), to_string(w).c_str());
    const CompiledSystem cs = compile_certificate(cert);
    print_trace(cert, cs, false);
    const Analysis an = analyze(cs);
    if (!an.contradiction)
      throw error("internal: reported certificate does not re-verify");
    std::printf("re-verified: contradiction, accumulated phase %s\n",
                phase_to_string(an.witness->accumulated).c_str());

    rep["contexts_used"] = res.contexts_used;
    rep["certificate"] = certificate_to_json(cert);
    rep["verification"] = {{"status", "contradiction"},
                           {"accumulated", phase_to_string(an.witness->accumulated)}};
    if (!emit_path.empty()) {
      save_certificate(cert, emit_path);
      std::printf("emitted: %s\n", emit_path.c_str());
      rep["emitted"] = emit_path;
    }
  } else {
    std::printf("status: %s\n", status);
    if (!emit_path.empty())
      std::printf("nothing to emit: no certificate was found\n");
  }
  clock.lap("report_ms");
  if (timings) rep["timings"] = clock.stages;
  write_report(rep, json_path);
  return 0;
}

// ------------------------------------------------------------------- print

int run_print(const std::string& command_echo, const CertSource& src,
              const std::string& json_path, bool timings) {
  StageClock clock;
  const Certificate& cert = src.cert;
  const CompiledSystem cs = compile_certificate(cert);
  clock.lap("compile_ms");

  std::printf("certificate: %s  (%zu dofs, theta %s)\n", src.label.c_str(),
              cert.system->n_dof(), theta_text(cert.system).c_str());
  std::printf("\nmonomials:\n");
  for (const auto& [id, w] : cert.monomials)
    std::printf("  %-6s = %s\n", id.c_str(), to_string(w).c_str());
  std::printf("\ncontexts:\n");
  print_trace(cert, cs, true);

  json links = json::array();
  bool any_link = false;
  for (std::size_t r = 0; r < cs.rows.size(); ++r) {
    if (cs.rows[r].kind != CompiledRow::Kind::inverse_link) continue;
    if (!any_link) {
      std::printf("\ninverse links:\n");
      any_link = true;
    }
    std::printf("  %s\n", row_equation(cs, r).c_str());
    links.push_back(row_equation(cs, r));
  }

  json rep = report_head(command_echo, json::array({src.input_info}));
  rep["certificate"] = certificate_to_json(cert);
  rep["trace"] = trace_json(cert, cs);
  rep["links"] = links;
  if (timings) rep["timings"] = clock.stages;
  write_report(rep, json_path);
  return 0;
}

std::string echo_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weyl monomial contextuality toolkit"};
  app.require_subcommand(1);
  const std::string command_echo = echo_args(argc, argv);

  std::string cert_path, builtin, theta_flag, json_path, emit_path;
  bool timings = false, dump_states = false;

  const auto add_cert_source = [&](CLI::App* cmd) {
    cmd->add_option("certificate", cert_path, "certificate JSON file");
    cmd->add_option("--builtin", builtin, "built-in certificate: peres2 or mermin3");
    cmd->add_option("--theta", theta_flag, "twists for a builtin, comma-separated rationals");
  };
  const auto add_report_flags = [&](CLI::App* cmd) {
    cmd->add_option("--json", json_path, "write the JSON report here");
    cmd->add_flag("--timings", timings, "include wall-clock timings in the report");
  };

  auto* verify = app.add_subcommand("verify", "compile a certificate and decide its parity system");
  add_cert_source(verify);
  add_report_flags(verify);

  auto* oracle = app.add_subcommand("oracle", "re-check a certificate numerically");
  std::string target;
  oracle->add_option("target", target, "matrix or grid")
      ->required()
      ->check(CLI::IsMember({"matrix", "grid"}));
  add_cert_source(oracle);
  add_report_flags(oracle);
  std::size_t max_dim = 20000, grid_N = 8, n_states = 100;
  unsigned seed = 20240801;
  double period = 0;
  long x0 = 0;
  bool epr = false, ghz = false, dim_auto = false;
  oracle->add_flag("--dim-auto", dim_auto,
                   "derive the matrix dimension from the twist denominators (always on)");
  oracle->add_option("--max-dim", max_dim, "refuse matrix models larger than this");
  oracle->add_option("--grid-N", grid_N, "lattice points per degree of freedom");
  oracle->add_option("--period", period, "physical period L (default: N)");
  oracle->add_option("--seed", seed, "random-state / eigensolver seed");
  oracle->add_option("--states", n_states, "random states per grid claim");
  oracle->add_flag("--epr", epr, "grid only: check the delta ridge eigenstate table");
  oracle->add_option("--x0", x0, "ridge offset for --epr");
  oracle->add_flag("--ghz", ghz, "grid only: diagonalize the four commuting triple products");
  oracle->add_flag("--dump-states", dump_states, "include state vectors in the JSON report");

  auto* search = app.add_subcommand("search", "look for new obstruction certificates");
  SearchParams sp;
  std::string search_theta;
  bool no_symmetry = false;
  search->add_option("--dofs", sp.n_dof, "degrees of freedom")->required();
  search->add_option("--max-exp", sp.max_exponent, "exponent box half-width");
  search->add_option("--theta", search_theta, "twists, comma-separated odd integers");
  search->add_option("--max-contexts", sp.max_contexts, "certificate size cap");
  search->add_option("--max-context-size", sp.max_context_size, "members per context cap");
  search->add_option("--nodes", sp.node_budget, "node budget");
  search->add_option("--time-budget", sp.time_budget_seconds, "wall-clock budget in seconds");
  search->add_flag("--u-only", sp.u_only, "restrict the pool to position-side monomials");
  search->add_flag("--no-symmetry", no_symmetry, "disable symmetry reduction of seeds");
  search->add_option("--emit", emit_path, "write a found certificate here");
  add_report_flags(search);

  auto* print = app.add_subcommand("print", "pretty-print a certificate with its equations");
  add_cert_source(print);
  add_report_flags(print);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed())
      return run_verify(command_echo, resolve_cert(cert_path, builtin, theta_flag), json_path,
                        timings);

    if (oracle->parsed()) {
      if (target == "matrix") {
        if (epr || ghz) throw parse_error("--epr and --ghz are grid experiments");
        return run_oracle_matrix(command_echo, resolve_cert(cert_path, builtin, theta_flag),
                                 max_dim, json_path, timings);
      }
      if (epr && ghz) throw parse_error("pick one of --epr and --ghz");
      if (epr || ghz) {
        if (!cert_path.empty() || !builtin.empty())
          throw parse_error("--epr/--ghz run on fixed operator families, not a certificate");
        if (epr) return run_oracle_grid_epr(command_echo, grid_N, period, x0, dump_states,
                                            json_path, timings);
        const std::size_t ghz_N = oracle->count("--grid-N") ? grid_N : 4;
        return run_oracle_grid_ghz(command_echo, ghz_N, period, seed, dump_states, json_path,
                                   timings);
      }
      return run_oracle_grid_cert(command_echo, resolve_cert(cert_path, builtin, theta_flag),
                                  grid_N, period, n_states, seed, json_path, timings);
    }

    if (search->parsed()) {
      if (!search_theta.empty()) sp.theta = parse_theta_list(search_theta);
      sp.use_symmetry = !no_symmetry;
      return run_search(command_echo, sp, emit_path, json_path, timings);
    }

    if (print->parsed())
      return run_print(command_echo, resolve_cert(cert_path, builtin, theta_flag), json_path,
                       timings);
  } catch (const parse_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const commutation_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const binding_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
