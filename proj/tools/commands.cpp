// Copyright 2026 The permvqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "commands.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "permvqe/ansatz.hpp"
#include "permvqe/dense.hpp"
#include "permvqe/entanglement.hpp"
#include "permvqe/error.hpp"
#include "permvqe/fermion.hpp"
#include "permvqe/ising.hpp"
#include "permvqe/ordering.hpp"
#include "permvqe/pauli.hpp"
#include "permvqe/vqe.hpp"
#include "settings.hpp"

namespace permvqe::cli {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kVersion = "0.1.0";

constexpr const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0  success\n"
    "  1  internal error\n"
    "  2  usage error or invalid option/config value\n"
    "  3  input file unreadable or output not writable\n"
    "  4  malformed input file (Pauli, FCIDUMP, map or config)\n"
    "  5  dimension mismatch (qubit counts, bitstring widths)\n"
    "  6  size limit exceeded (dense diagonalization, brute-force ordering)\n"
    "\n"
    "Every option may also be given in the --config JSON file under its\n"
    "dotted key (e.g. {\"ansatz\": {\"depth\": 3}}) at top level or inside a\n"
    "section named after the subcommand; explicit flags take precedence.";

// --- Output directory --------------------------------------------------------

class Output {
 public:
  Output(std::string dir, std::string format) : dir_(std::move(dir)), format_(std::move(format)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory '" + dir_ + "': " + ec.message());
  }

  const std::string& format() const { return format_; }
  bool csv() const { return format_ == "csv"; }

  void write(const std::string& name, const std::string& content) {
    const fs::path path = fs::path(dir_) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << content;
    out.close();
    if (!out) throw IoError("error writing '" + path.string() + "'");
    files_.push_back({{"path", name}, {"bytes", content.size()}});
  }

  void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }

  /// Table artifact in the selected format.
  void write_table(const std::string& stem, const json& as_json, const std::string& as_csv) {
    if (csv()) {
      write(stem + ".csv", as_csv);
    } else {
      write_json(stem + ".json", as_json);
    }
  }

  void write_manifest(const std::string& command, const std::vector<std::string>& argv) {
    json m;
    m["command"] = command;
    m["files"] = files_;
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream ts;
    ts << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    m["metadata"] = {{"timestamp", ts.str()}, {"version", kVersion}, {"argv", argv}};
    const fs::path path = fs::path(dir_) / "manifest.json";
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << m.dump(2) << "\n";
  }

 private:
  std::string dir_;
  std::string format_;
  json files_ = json::array();
};

// --- Shared option groups ----------------------------------------------------

struct Global {
  std::uint64_t seed = 0;
  int threads = 1;
  std::string output = "permvqe_out";
  std::string format = "json";
  std::string config;
};

struct ProblemOpts {
  std::string input;
  std::string input_format = "auto";
  std::string encoding = "jw";
  std::string spin_order = "blocked";
  std::optional<int> sector;
};

struct AnsatzOpts {
  std::string family = "ryrz";
  int depth = 1;
  std::string entangler = "cnot";
  bool prune = false;
  std::optional<std::string> hf_bits;
};

struct OptimizerOpts {
  std::string kind = "cobyla";
  int max_evals = 10000;
  int trials = 1;
  double rho_begin = 1.0;
  double rho_end = 1e-8;
  double tol = 1e-6;
};

struct NoiseOpts {
  std::optional<double> p1;
  std::optional<double> p2;
  int shots = 10000;
  bool noisy_objective = false;
};

struct OrderingOpts {
  std::string method = "auto";
  double beta = 2.0;
  int cap = kDefaultBruteForceCap;
};

void add_problem(CLI::App* app, Settings& s, ProblemOpts& o) {
  s.bind(app, "input", o.input, "input", "Hamiltonian: FCIDUMP or Pauli text file");
  s.bind(app, "--input-format", o.input_format, "input_format", "auto|pauli|fcidump");
  s.bind(app, "--encoding", o.encoding, "encoding", "Fermion-to-qubit encoding for FCIDUMP input: jw|bk|parity");
  s.bind(app, "--spin-order", o.spin_order, "spin_order", "Spin-orbital to qubit layout: blocked|interleaved");
  s.bind(app, "--sector", o.sector, "sector",
         "Restrict exact references to basis states of this Hamming weight (particle number under jw)");
}

void add_ansatz(CLI::App* app, Settings& s, AnsatzOpts& o) {
  s.bind(app, "--ansatz", o.family, "ansatz.family", "ryrz|ry|particle_preserving");
  s.bind(app, "--depth,-L", o.depth, "ansatz.depth", "Number of entangling blocks L");
  s.bind(app, "--entangler", o.entangler, "ansatz.entangler", "Ladder gate of ryrz/ry: cnot|cz");
  s.bind_flag(app, "--prune", o.prune, "ansatz.prune", "Drop entanglers that act trivially on the HF state");
  s.bind(app, "--hf-bits", o.hf_bits, "ansatz.hf_bits",
         "Reference bitstring, qubit 0 first (default: Hartree-Fock for FCIDUMP input)");
}

void add_optimizer(CLI::App* app, Settings& s, OptimizerOpts& o) {
  s.bind(app, "--optimizer", o.kind, "optimizer.kind", "cobyla|nelder_mead");
  s.bind(app, "--max-evals", o.max_evals, "optimizer.max_evals", "Objective evaluations per trial");
  s.bind(app, "--trials", o.trials, "optimizer.trials", "Random restarts; the best is kept");
  s.bind(app, "--rho-begin", o.rho_begin, "optimizer.rho_begin", "Initial trust-region radius");
  s.bind(app, "--rho-end", o.rho_end, "optimizer.rho_end", "Final trust-region radius");
  s.bind(app, "--tol", o.tol, "optimizer.tol", "Energy tolerance for 'exact' (Hamiltonian units)");
}

void add_noise(CLI::App* app, Settings& s, NoiseOpts& o) {
  s.bind(app, "--p1", o.p1, "noise.p1", "Depolarizing probability after one-qubit gates (enables noise)");
  s.bind(app, "--p2", o.p2, "noise.p2", "Per-qubit depolarizing probability after two-qubit gates");
  s.bind(app, "--shots", o.shots, "noise.shots", "Shots per Pauli word");
  s.bind_flag(app, "--noisy-objective", o.noisy_objective, "noise.objective",
              "Optimize the noisy estimator itself instead of re-evaluating the optimum");
}

void add_ordering(CLI::App* app, Settings& s, OrderingOpts& o) {
  s.bind(app, "--method", o.method, "ordering.method", "auto|brute_force|fiedler");
  s.bind(app, "--beta", o.beta, "ordering.beta", "Distance exponent of the cost function");
  s.bind(app, "--cap", o.cap, "ordering.cap", "Largest register ordered by brute force");
}

// --- Loading -----------------------------------------------------------------

struct Problem {
  PauliSum h;
  std::optional<IntegralSet> ints;
  std::string kind;
  Encoding encoding = Encoding::jordan_wigner;
  SpinOrbitalOrdering spin_order = SpinOrbitalOrdering::blocked;
};

std::string first_token(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;
    return tok;
  }
  return {};
}

void require_readable(const std::string& path) {
  if (path.empty()) throw UsageError("no input file given");
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
}

Problem load_problem(const ProblemOpts& o) {
  require_readable(o.input);
  Problem p;
  p.encoding = parse_encoding(o.encoding);
  p.spin_order = parse_ordering(o.spin_order);
  std::string kind = o.input_format;
  if (kind == "auto") kind = first_token(o.input) == "qubits" ? "pauli" : "fcidump";
  if (kind == "pauli") {
    p.h = load_pauli_file(o.input);
  } else if (kind == "fcidump") {
    p.ints = load_fcidump(o.input);
    p.h = encode(*p.ints, p.spin_order, p.encoding);
  } else {
    throw UsageError("unknown input format '" + o.input_format + "' (auto|pauli|fcidump)");
  }
  p.kind = kind;
  return p;
}

Bitstring parse_bits(const std::string& text, int n) {
  Bitstring b;
  for (char c : text) {
    if (c != '0' && c != '1') throw UsageError("--hf-bits must contain only 0 and 1");
    b.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  if (static_cast<int>(b.size()) != n) {
    throw DimensionError("--hf-bits has " + std::to_string(b.size()) + " bits for " + std::to_string(n) + " qubits");
  }
  return b;
}

std::string bits_string(const Bitstring& b) {
  std::string s;
  for (auto v : b) s += v ? '1' : '0';
  return s;
}

std::optional<Bitstring> reference_bits(const Problem& p, const AnsatzOpts& a) {
  if (a.hf_bits) return parse_bits(*a.hf_bits, p.h.n_qubits());
  if (p.ints) {
    return hartree_fock_bitstring(p.ints->n_electrons(), p.ints->n_spatial(), p.spin_order,
                                  Permutation::identity(p.h.n_qubits()), p.encoding);
  }
  return std::nullopt;
}

VqeConfig make_config(const Global& g, const AnsatzOpts& a, const OptimizerOpts& o, const NoiseOpts& nz,
                      const Problem& p) {
  VqeConfig c;
  c.ansatz.family = parse_ansatz_family(a.family);
  c.ansatz.n_qubits = p.h.n_qubits();
  c.ansatz.depth = a.depth;
  c.ansatz.entangler = parse_entangler(a.entangler);
  c.ansatz.prune = a.prune;
  if (c.ansatz.family == AnsatzFamily::particle_preserving) {
    c.ansatz.hf_bits = reference_bits(p, a);
    if (!c.ansatz.hf_bits) throw UsageError("particle_preserving ansatz on Pauli input needs --hf-bits");
  }
  c.max_evals = o.max_evals;
  c.trials = o.trials;
  c.seed = g.seed;
  c.energy_tol = o.tol;
  c.optimizer = parse_optimizer_kind(o.kind);
  c.rho_begin = o.rho_begin;
  c.rho_end = o.rho_end;
  c.threads = g.threads;
  if (nz.p1 || nz.p2) {
    NoiseModel m;
    m.p1 = nz.p1.value_or(0.0);
    m.p2 = nz.p2.value_or(0.0);
    m.shots = nz.shots;
    m.seed = g.seed;
    m.validate();
    c.noise = m;
    c.noisy_objective = nz.noisy_objective;
  } else if (nz.noisy_objective) {
    throw UsageError("--noisy-objective requires --p1 or --p2");
  }
  c.validate();
  return c;
}

GroundState exact_reference(const Problem& p, const ProblemOpts& o) {
  GroundStateOptions go;
  go.hamming_weight = o.sector;
  try {
    return ground_state(p.h, go);
  } catch (const LimitError& e) {
    throw LimitError(std::string(e.what()) + "; exact references need at most " + std::to_string(kDefaultDenseCap) +
                     " qubits");
  }
}

ConnectivityDistance connectivity(const OrderingOpts& o) {
  ConnectivityDistance c;
  c.beta = o.beta;
  c.validate();
  return c;
}

EntanglementMap load_map(const std::string& path) {
  require_readable(path);
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start != std::string::npos && text[start] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(path + ": " + e.what());
    }
    // accept a bare map, or the result document written by `map`
    if (!j.contains("I") && j.contains("result") && j["result"].contains("map")) j = j["result"]["map"];
    if (!j.contains("I")) throw ParseError(path + ": map JSON lacks the \"I\" matrix");
    const auto rows = j["I"].get<std::vector<std::vector<double>>>();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw ParseError(path + ": map is not square");
      for (std::size_t k = 0; k < rows.size(); ++k) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
      }
    }
    const LogBase base = j.value("log_base", json(2)) == json("e") ? LogBase::natural : LogBase::two;
    try {
      return EntanglementMap(m, base);
    } catch (const std::invalid_argument& e) {
      throw ParseError(path + ": " + e.what());
    }
  }
  // CSV: one row per line
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw ParseError(path, ParseError("non-numeric map entry '" + cell + "'", lineno));
      }
    }
    rows.push_back(std::move(row));
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw ParseError(path, ParseError("map is not square", static_cast<int>(i + 1)));
    for (std::size_t k = 0; k < rows.size(); ++k) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
  }
  try {
    return EntanglementMap(m);
  } catch (const std::invalid_argument& e) {
    throw ParseError(path + ": " + e.what());
  }
}

json parse(const std::string& s) { return json::parse(s); }

json problem_summary(const Problem& p) {
  json j;
  j["kind"] = p.kind;
  j["n_qubits"] = p.h.n_qubits();
  j["terms"] = p.h.size();
  if (p.ints) {
    j["encoding"] = to_string(p.encoding);
    j["spin_order"] = to_string(p.spin_order);
    j["n_spatial"] = p.ints->n_spatial();
    j["n_electrons"] = p.ints->n_electrons();
  }
  return j;
}

std::string fmt(double v, int precision = 10) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

json optional_json(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

std::vector<int> perm_vector(const Permutation& p) { return {p.map().begin(), p.map().end()}; }

// --- Subcommands -------------------------------------------------------------

struct Context {
  const Global& global;
  Output& out;
  json result;
};

struct Command {
  std::string name;
  CLI::App* app = nullptr;
  Settings settings;
  std::function<void(Context&)> run;
};

struct EncodeCmd {
  ProblemOpts problem;

  void attach(Command& c) {
    c.app->description("Encode an FCIDUMP Hamiltonian as a Pauli sum");
    add_problem(c.app, c.settings, problem);
    c.run = [this](Context& ctx) {
      const Problem p = load_problem(problem);
      ctx.out.write("hamiltonian.pauli", to_pauli_string(p.h));
      json j = problem_summary(p);
      j["constant"] = p.h.constant();
      if (p.ints) {
        const Bitstring hf = hartree_fock_bitstring(p.ints->n_electrons(), p.ints->n_spatial(), p.spin_order,
                                                    Permutation::identity(p.h.n_qubits()), p.encoding);
        j["hf_bits"] = bits_string(hf);
        j["hf_energy"] = expectation(StateVector::from_bits(hf), p.h);
        if (p.ints->e_hf) j["header_e_hf"] = *p.ints->e_hf;
        if (p.ints->e_fci) j["header_e_fci"] = *p.ints->e_fci;
      }
      json terms = json::array();
      std::ostringstream csv;
      csv << "word,coefficient\n" << std::setprecision(17);
      for (const auto& t : p.h.terms()) {
        terms.push_back({{"word", t.word_string()}, {"coefficient", t.coefficient()}});
        csv << t.word_string() << ',' << t.coefficient() << '\n';
      }
      ctx.out.write_table("terms", terms, csv.str());
      std::cout << p.h.n_qubits() << " qubits, " << p.h.size() << " terms, constant " << fmt(p.h.constant()) << "\n";
      if (p.ints) std::cout << "hf bits " << j["hf_bits"].get<std::string>() << ", <HF|H|HF> = " << fmt(j["hf_energy"].get<double>()) << "\n";
      ctx.result = std::move(j);
    };
  }
};

struct MapCmd {
  ProblemOpts problem;
  AnsatzOpts ansatz;
  OptimizerOpts opt;
  NoiseOpts noise;
  std::string state = "exact";
  double threshold = kEntangledThreshold;
  std::string log_base = "2";

  void attach(Command& c) {
    c.app->description("Pairwise mutual-information map of the exact or a VQE ground state");
    add_problem(c.app, c.settings, problem);
    c.settings.bind(c.app, "--state", state, "state", "exact|vqe");
    c.settings.bind(c.app, "--threshold", threshold, "threshold", "Entangled-qubit threshold on max_j I_ij");
    c.settings.bind(c.app, "--log-base", log_base, "log_base", "2|e");
    add_ansatz(c.app, c.settings, ansatz);
    add_optimizer(c.app, c.settings, opt);
    c.run = [this](Context& ctx) {
      const Problem p = load_problem(problem);
      const LogBase base = log_base == "e" ? LogBase::natural : LogBase::two;
      if (log_base != "e" && log_base != "2") throw UsageError("--log-base must be 2 or e");
      json j = problem_summary(p);
      StateVector psi;
      if (state == "exact") {
        GroundState gs;
        try {
          gs = exact_reference(p, problem);
        } catch (const LimitError& e) {
          throw LimitError(std::string(e.what()) + " (use --state vqe)");
        }
        psi = gs.state;
        j["energy"] = gs.energy;
        j["degenerate"] = gs.degenerate;
      } else if (state == "vqe") {
        const VqeConfig cfg = make_config(ctx.global, ansatz, opt, noise, p);
        const VqeResult r = minimize(p.h, cfg);
        psi = prepare_state(cfg.ansatz, r.params);
        j["energy"] = r.energy;
        j["vqe"] = parse(r.to_json());
      } else {
        throw UsageError("--state must be exact or vqe");
      }
      const EntanglementMap map = mutual_information_map(psi, base);
      const int entangled = map.entangled_qubit_count(threshold);
      j["entangled_qubits"] = entangled;
      j["threshold"] = threshold;
      j["tomography_measurements"] = tomography_measurement_count(p.h.n_qubits());
      j["cost"] = cost(map, ConnectivityDistance{});
      j["map"] = parse(map.to_json());
      ctx.out.write_table("entanglement_map", parse(map.to_json()), map.to_csv());
      std::cout << "energy " << fmt(j["energy"].get<double>()) << "\n"
                << entangled << " of " << p.h.n_qubits() << " qubits entangled above " << threshold << "\n"
                << tomography_measurement_count(p.h.n_qubits()) << " two-qubit tomography measurements\n";
      ctx.result = std::move(j);
    };
  }
};

struct OrderCmd {
  std::string input;
  std::string input_kind = "auto";
  OrderingOpts ordering;
  ProblemOpts problem;
  std::optional<std::string> apply;

  void attach(Command& c) {
    c.app->description("Qubit relabeling that minimizes distance-weighted mutual information");
    c.settings.bind(c.app, "input", input, "input", "Map (JSON from `map`, or CSV) or a Hamiltonian file");
    c.settings.bind(c.app, "--input-kind", input_kind, "input_kind",
                    "auto|map|hamiltonian (a Hamiltonian is mapped at its exact ground state)");
    add_ordering(c.app, c.settings, ordering);
    c.settings.bind(c.app, "--encoding", problem.encoding, "encoding", "Encoding for FCIDUMP input: jw|bk|parity");
    c.settings.bind(c.app, "--spin-order", problem.spin_order, "spin_order", "blocked|interleaved");
    c.settings.bind(c.app, "--sector", problem.sector, "sector", "Hamming-weight sector of the exact state");
    c.settings.bind(c.app, "--apply", apply, "apply", "Pauli file to relabel into permuted.pauli");
    c.run = [this](Context& ctx) {
      require_readable(input);
      std::string kind = input_kind;
      if (kind == "auto") {
        const std::string ext = fs::path(input).extension().string();
        const std::string tok = first_token(input);
        kind = (ext == ".json" || ext == ".csv" || (!tok.empty() && tok[0] == '{')) ? "map" : "hamiltonian";
      }
      EntanglementMap map;
      std::optional<PauliSum> h;
      if (kind == "map") {
        map = load_map(input);
      } else if (kind == "hamiltonian") {
        ProblemOpts po = problem;
        po.input = input;
        const Problem p = load_problem(po);
        map = mutual_information_map(exact_reference(p, po).state);
        h = p.h;
      } else {
        throw UsageError("--input-kind must be auto, map or hamiltonian");
      }
      const OrderingResult r = find_ordering(map, connectivity(ordering), parse_ordering_method(ordering.method),
                                             ordering.cap, ctx.global.threads);
      if (apply) h = load_pauli_file(*apply);
      if (h) {
        if (h->n_qubits() != map.n()) throw DimensionError("Hamiltonian width differs from the map");
        ctx.out.write("permuted.pauli", to_pauli_string(apply_permutation(*h, r.permutation)));
      }
      json j = parse(r.to_json());
      j["n"] = map.n();
      json table = json::array();
      std::ostringstream csv;
      csv << "qubit,position\n";
      for (int q = 0; q < map.n(); ++q) {
        table.push_back({{"qubit", q}, {"position", r.permutation(q)}});
        csv << q << ',' << r.permutation(q) << '\n';
      }
      ctx.out.write_table("permutation", table, csv.str());
      std::cout << "method " << to_string(r.method) << (r.degenerate ? " (degenerate spectrum)" : "") << "\n"
                << "cost " << fmt(r.cost_before) << " -> " << fmt(r.cost_after) << "\npermutation";
      for (int q = 0; q < map.n(); ++q) std::cout << ' ' << r.permutation(q);
      std::cout << "\n";
      ctx.result = std::move(j);
    };
  }
};

struct VqeCmd {
  ProblemOpts problem;
  AnsatzOpts ansatz;
  OptimizerOpts opt;
  NoiseOpts noise;

  void attach(Command& c) {
    c.app->description("Variational ground-state search with a layered ansatz");
    add_problem(c.app, c.settings, problem);
    add_ansatz(c.app, c.settings, ansatz);
    add_optimizer(c.app, c.settings, opt);
    add_noise(c.app, c.settings, noise);
    c.run = [this](Context& ctx) {
      const Problem p = load_problem(problem);
      const VqeConfig cfg = make_config(ctx.global, ansatz, opt, noise, p);
      const VqeResult r = minimize(p.h, cfg);
      json j = problem_summary(p);
      j["parameters"] = parameter_count(cfg.ansatz);
      j["vqe"] = parse(r.to_json());
      std::cout << "E_VQE " << fmt(r.energy) << " (" << r.evals_used << " evaluations)\n";
      if (r.noisy) std::cout << "noisy " << fmt(r.noisy->mean) << " +- " << fmt(r.noisy->standard_error, 3) << "\n";
      if (p.h.n_qubits() <= kDefaultDenseCap) {
        const GroundState gs = exact_reference(p, problem);
        j["exact_energy"] = gs.energy;
        j["error"] = r.energy - gs.energy;
        if (p.ints) j["delta_e_kcal_mol"] = (r.energy - gs.energy) * kKcalPerHartree;
        std::cout << "E_exact " << fmt(gs.energy) << ", error " << fmt(r.energy - gs.energy, 4) << "\n";
      }
      json table = json::array();
      std::ostringstream csv;
      csv << "trial,energy\n" << std::setprecision(17);
      for (std::size_t t = 0; t < r.trial_energies.size(); ++t) {
        table.push_back({{"trial", t}, {"energy", r.trial_energies[t]}});
        csv << t << ',' << r.trial_energies[t] << '\n';
      }
      ctx.out.write_table("trials", table, csv.str());
      ctx.result = std::move(j);
    };
  }
};

struct PermVqeCmd {
  ProblemOpts problem;
  AnsatzOpts ansatz;
  OptimizerOpts opt;
  NoiseOpts noise;
  OrderingOpts ordering;
  std::string depths = "1";
  std::vector<std::string> variants{"unpermuted", "permvqe"};
  int max_outer = 3;
  double min_improvement = 0.01;
  int repetitions = 10;
  std::optional<double> e_hf;

  void attach(Command& c) {
    c.app->description("Entanglement-guided relabeling loop and Delta-E curves against depth");
    add_problem(c.app, c.settings, problem);
    c.settings.bind(c.app, "--depths", depths, "depths", "Depths to scan, e.g. 1-8 or 1,3,5 (overrides --depth)");
    c.settings.bind(c.app, "--variants", variants, "variants", "Any of unpermuted, permuted_exact, permvqe")
        ->delimiter(',');
    c.settings.bind(c.app, "--max-outer", max_outer, "max_outer", "Maximum VQE runs of the loop");
    c.settings.bind(c.app, "--min-improvement", min_improvement, "min_improvement",
                    "Stop when a relabeling cuts the cost by less than this fraction");
    c.settings.bind(c.app, "--repetitions", repetitions, "repetitions", "Noisy re-evaluations per curve point");
    c.settings.bind(c.app, "--e-hf", e_hf, "e_hf",
                    "Reference energy for Delta E_pc (default: <ref|H|ref> of the HF or --hf-bits state)");
    add_ansatz(c.app, c.settings, ansatz);
    add_optimizer(c.app, c.settings, opt);
    add_noise(c.app, c.settings, noise);
    add_ordering(c.app, c.settings, ordering);
    c.run = [this](Context& ctx) {
      const Problem p = load_problem(problem);
      const VqeConfig cfg = make_config(ctx.global, ansatz, opt, noise, p);
      const GroundState gs = exact_reference(p, problem);
      CurveOptions co;
      co.depths = parse_int_list(depths);
      co.e_exact = gs.energy;
      if (e_hf) {
        co.e_hf = *e_hf;
      } else if (const auto ref = reference_bits(p, ansatz)) {
        co.e_hf = expectation(StateVector::from_bits(*ref), p.h);
      } else {
        co.e_hf = expectation(StateVector(p.h.n_qubits()), p.h);
      }
      co.exact_state = gs.state;
      co.permvqe.max_outer = max_outer;
      co.permvqe.min_relative_improvement = min_improvement;
      co.permvqe.method = parse_ordering_method(ordering.method);
      co.permvqe.brute_force_cap = ordering.cap;
      co.permvqe.conn = connectivity(ordering);
      co.noisy_repetitions = repetitions;

      json j = problem_summary(p);
      j["exact_energy"] = gs.energy;
      j["reference_energy"] = co.e_hf;
      j["delta_e_pc_kcal_mol"] = (co.e_hf - gs.energy) * kKcalPerHartree;
      std::vector<CurveRow> all;
      json rows = json::array();
      std::cout << "E_exact " << fmt(gs.energy) << ", Delta E_pc " << fmt((co.e_hf - gs.energy) * kKcalPerHartree, 4)
                << " kcal/mol\n";
      for (const auto& v : variants) {
        co.variant = parse_curve_variant(v);
        for (auto& row : delta_e_curve(p.h, cfg, co)) {
          json r = {{"L", row.depth},
                    {"variant", to_string(row.variant)},
                    {"energy", row.energy},
                    {"delta_e_kcal_mol", row.delta_e_kcal},
                    {"stderr_kcal_mol", row.stderr_kcal},
                    {"permutation", row.permutation}};
          if (row.loop) r["loop"] = parse(row.loop->to_json());
          rows.push_back(std::move(r));
          std::cout << "L=" << row.depth << ' ' << to_string(row.variant) << " Delta E "
                    << fmt(row.delta_e_kcal, 4) << " kcal/mol";
          if (row.stderr_kcal > 0) std::cout << " +- " << fmt(row.stderr_kcal, 3);
          if (row.loop) std::cout << " (" << row.loop->iterations.size() << " iterations)";
          std::cout << "\n";
          all.push_back(std::move(row));
        }
      }
      j["rows"] = rows;
      json table = json::array();
      for (const auto& r : rows) {
        json t = r;
        t.erase("loop");
        table.push_back(std::move(t));
      }
      ctx.out.write_table("curve", table, curve_to_csv(all));
      ctx.result = std::move(j);
    };
  }
};

struct IsingBenchCmd {
  std::string models = "1-5";
  bool table1 = false;
  int trials = 10;
  int max_depth = 10;
  int max_evals = 10000;
  double tol = 1e-6;
  std::string family = "ryrz";
  std::string entangler = "cnot";
  std::string optimizer = "cobyla";

  void attach(Command& c) {
    c.app->description("Minimum depth to the exact energy on the six-qubit Ising models, before and after relabeling");
    c.settings.bind_flag(c.app, "--table1", table1, "table1", "All five models, with the published depths alongside");
    c.settings.bind(c.app, "--models", models, "models", "Model indices 1-5, e.g. 1,4 or 1-3");
    c.settings.bind(c.app, "--trials", trials, "optimizer.trials", "Random restarts per depth");
    c.settings.bind(c.app, "--max-depth", max_depth, "max_depth", "Deepest ansatz tried");
    c.settings.bind(c.app, "--max-evals", max_evals, "optimizer.max_evals", "Objective evaluations per trial");
    c.settings.bind(c.app, "--tol", tol, "optimizer.tol", "Exactness tolerance");
    c.settings.bind(c.app, "--ansatz", family, "ansatz.family", "ryrz|ry");
    c.settings.bind(c.app, "--entangler", entangler, "ansatz.entangler", "cnot|cz");
    c.settings.bind(c.app, "--optimizer", optimizer, "optimizer.kind", "cobyla|nelder_mead");
    c.run = [this](Context& ctx) {
      VqeConfig base;
      base.ansatz.family = parse_ansatz_family(family);
      if (base.ansatz.family == AnsatzFamily::particle_preserving) {
        throw UsageError("ising-bench supports the ryrz and ry ansatze");
      }
      base.ansatz.n_qubits = kIsingQubits;
      base.ansatz.entangler = parse_entangler(entangler);
      base.trials = trials;
      base.max_evals = max_evals;
      base.energy_tol = tol;
      base.seed = ctx.global.seed;
      base.threads = ctx.global.threads;
      base.optimizer = parse_optimizer_kind(optimizer);
      base.validate();
      if (max_depth < 1) throw UsageError("--max-depth must be at least 1");
      std::vector<int> ids = table1 ? std::vector<int>{1, 2, 3, 4, 5} : parse_int_list(models);
      for (int m : ids) {
        if (m < 1 || m > kIsingModelCount) throw UsageError("Ising model index must be in 1..5");
      }
      const auto rows = ising_bench(base, max_depth, ids);
      ctx.out.write_table("ising_bench", parse(ising_bench_json(rows)), ising_bench_csv(rows));
      auto depth = [&](const std::optional<int>& d) { return d ? std::to_string(*d) : ">" + std::to_string(max_depth); };
      std::cout << std::left << std::setw(7) << "model" << std::setw(34) << "hamiltonian" << std::setw(12)
                << "unpermuted" << std::setw(10) << "permuted" << (table1 ? "published" : "") << "\n";
      for (const auto& r : rows) {
        std::cout << std::setw(7) << ("H" + std::to_string(r.model)) << std::setw(34) << r.label << std::setw(12)
                  << depth(r.unpermuted.depth) << std::setw(10) << depth(r.permuted.depth);
        if (table1) {
          const auto ref = kIsingReferenceDepths[static_cast<std::size_t>(r.model - 1)];
          std::cout << ref.first << " / " << ref.second;
        }
        std::cout << "\n";
      }
      ctx.result = parse(ising_bench_json(rows));
    };
  }
};

struct DiagCmd {
  ProblemOpts problem;
  int levels = 8;

  void attach(Command& c) {
    c.app->description("Exact ground state and lowest levels of a Hamiltonian");
    add_problem(c.app, c.settings, problem);
    c.settings.bind(c.app, "--levels", levels, "levels", "Lowest eigenvalues to list (full-space dense only)");
    c.run = [this](Context& ctx) {
      const Problem p = load_problem(problem);
      const GroundState gs = exact_reference(p, problem);
      json j = problem_summary(p);
      j["ground_energy"] = gs.energy;
      j["gap"] = std::isfinite(gs.gap) ? json(gs.gap) : json(nullptr);
      j["degenerate"] = gs.degenerate;
      if (p.ints) {
        j["hf_energy"] = hartree_fock_energy(*p.ints);
        j["delta_e_pc_kcal_mol"] = (hartree_fock_energy(*p.ints) - gs.energy) * kKcalPerHartree;
      }
      std::vector<double> low;
      if (!problem.sector && p.h.n_qubits() <= 12) {
        const auto spec = dense_spectrum(p.h);
        for (Eigen::Index k = 0; k < spec.size() && k < levels; ++k) low.push_back(spec(k));
      } else {
        low.push_back(gs.energy);
      }
      j["levels"] = low;
      json table = json::array();
      std::ostringstream csv;
      csv << "k,energy\n" << std::setprecision(17);
      for (std::size_t k = 0; k < low.size(); ++k) {
        table.push_back({{"k", k}, {"energy", low[k]}});
        csv << k << ',' << low[k] << '\n';
      }
      ctx.out.write_table("spectrum", table, csv.str());
      std::cout << "E0 " << fmt(gs.energy) << (gs.degenerate ? " (degenerate)" : "") << "\n";
      if (std::isfinite(gs.gap)) std::cout << "gap " << fmt(gs.gap, 6) << "\n";
      ctx.result = std::move(j);
    };
  }
};

void validate_global(const Global& g) {
  if (g.format != "json" && g.format != "csv") throw UsageError("--format must be json or csv");
  if (g.threads < 1) throw UsageError("--threads must be at least 1");
  if (g.output.empty()) throw UsageError("--output must not be empty");
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Entanglement-guided qubit relabeling for variational ground-state searches", "permvqe"};
  app.footer(kExitCodeHelp);
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  Settings global_settings;
  global_settings.bind(&app, "--seed", g.seed, "seed", "Master seed for all random streams");
  global_settings.bind(&app, "--threads", g.threads, "threads", "Worker threads (results do not depend on it)");
  global_settings.bind(&app, "--output,-o", g.output, "output", "Output directory");
  global_settings.bind(&app, "--format", g.format, "format", "Table artifact format: json|csv");
  app.add_option("--config", g.config, "JSON config file; explicit flags override it");

  EncodeCmd encode_cmd;
  MapCmd map_cmd;
  OrderCmd order_cmd;
  VqeCmd vqe_cmd;
  PermVqeCmd permvqe_cmd;
  IsingBenchCmd bench_cmd;
  DiagCmd diag_cmd;

  std::vector<std::unique_ptr<Command>> commands;
  auto add = [&](const std::string& name, auto& impl) {
    auto c = std::make_unique<Command>();
    c->name = name;
    c->app = app.add_subcommand(name);
    c->app->footer(kExitCodeHelp);
    impl.attach(*c);
    commands.push_back(std::move(c));
  };
  add("encode", encode_cmd);
  add("map", map_cmd);
  add("order", order_cmd);
  add("vqe", vqe_cmd);
  add("permvqe", permvqe_cmd);
  add("ising-bench", bench_cmd);
  add("diag", diag_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  Command* selected = nullptr;
  for (auto& c : commands) {
    if (c->app->parsed()) selected = c.get();
  }
  if (!selected) throw UsageError("no subcommand given");

  if (!g.config.empty()) {
    std::ifstream in(g.config);
    if (!in) throw IoError("cannot read config '" + g.config + "'");
    json cfg;
    try {
      cfg = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ParseError(g.config + ": " + e.what());
    }
    std::set<std::string> known;
    std::set<std::string> sections;
    for (const auto& k : global_settings.keys()) known.insert(k);
    for (const auto& c : commands) {
      sections.insert(c->name);
      for (const auto& k : c->settings.keys()) known.insert(k);
    }
    check_config_keys(cfg, known, sections);
    global_settings.apply(cfg, selected->name);
    selected->settings.apply(cfg, selected->name);
  }
  validate_global(g);

  json resolved;
  global_settings.resolved_into(resolved);
  selected->settings.resolved_into(resolved);
  if (!g.config.empty()) resolved["config"] = g.config;

  Output out(g.output, g.format);
  Context ctx{g, out, json::object()};
  selected->run(ctx);

  json doc;
  doc["command"] = selected->name;
  doc["version"] = kVersion;
  doc["config"] = resolved;
  doc["result"] = std::move(ctx.result);
  out.write_json("result.json", doc);
  out.write_manifest(selected->name, std::vector<std::string>(argv, argv + argc));
  return kOk;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string item;
  auto to_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw UsageError("bad integer list '" + text + "'");
    }
  };
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw UsageError("bad integer list '" + text + "'");
    const auto dash = item.find('-', 1);
    if (dash == std::string::npos) {
      out.push_back(to_int(item));
    } else {
      const int lo = to_int(item.substr(0, dash));
      const int hi = to_int(item.substr(dash + 1));
      if (hi < lo) throw UsageError("empty range '" + item + "'");
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    }
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

int run(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << "\n";
    return kDimension;
  } catch (const LimitError& e) {
    std::cerr << "limit exceeded: " << e.what() << "\n";
    return kLimit;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid value: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace permvqe::cli
