#include "zostep/problems/problem_file.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

namespace zostep::problems {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void put_vector(std::ostream& out, const char* name, const DenseVector& v) {
  out << "vector " << name << ' ' << v.size() << '\n';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << num(v[i]);
  out << '\n';
}

void put_matrix(std::ostream& out, const char* name, const DenseMatrix& m) {
  out << "matrix " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << num(m(i, j));
    out << '\n';
  }
}

void put_data(std::ostream& out, const FamilyData& data) {
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, LogisticData> || std::is_same_v<T, LseData>) {
          out << "scalar gamma " << num(d.gamma) << '\n';
          put_matrix(out, "a", d.a);
          put_vector(out, "b", d.b);
        } else if constexpr (std::is_same_v<T, QuadraticData>) {
          put_matrix(out, "hessian", d.hessian);
          put_vector(out, "linear", d.linear);
        } else if constexpr (std::is_same_v<T, MaxCutData>) {
          out << "scalar eps " << num(d.eps) << '\n' << "scalar eta " << num(d.eta) << '\n';
          put_matrix(out, "c", d.c);
        } else if constexpr (std::is_same_v<T, LeastSquaresData>) {
          put_matrix(out, "a", d.a);
          put_vector(out, "b", d.b);
        } else {
          out << "scalar m " << num(d.m) << '\n';
          put_matrix(out, "hessian", d.hessian);
          put_vector(out, "linear", d.linear);
        }
      },
      data);
}

struct Reader {
  std::istream& in;
  std::size_t line_no = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ProblemFormatError("problem file line " + std::to_string(line_no) + ": " + what);
  }

  bool next(std::string& line) {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  }

  std::vector<std::string> words() {
    std::string line;
    if (!next(line)) fail("unexpected end of file");
    std::istringstream ss(line);
    std::vector<std::string> out;
    for (std::string w; ss >> w;) out.push_back(w);
    return out;
  }

  double parse_double(const std::string& s) const {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) fail("bad number '" + s + "'");
    return v;
  }

  std::size_t parse_size(const std::string& s) const {
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) fail("bad count '" + s + "'");
    return v;
  }

  std::vector<double> numbers(std::size_t expected) {
    const auto w = words();
    if (w.size() != expected) {
      fail("expected " + std::to_string(expected) + " values, got " + std::to_string(w.size()));
    }
    std::vector<double> out;
    out.reserve(expected);
    for (const auto& s : w) out.push_back(parse_double(s));
    return out;
  }
};

struct Blocks {
  std::map<std::string, std::string> params;
  std::map<std::string, double> scalars;
  std::map<std::string, DenseVector> vectors;
  std::map<std::string, DenseMatrix> matrices;
  std::string prox_kind = "zero";
  double prox_arg = 0.0;
};

template <typename Map>
auto take(const Map& m, const std::string& key, const Reader& r) {
  const auto it = m.find(key);
  if (it == m.end()) r.fail("missing entry '" + key + "'");
  return it->second;
}

FamilyData assemble(Family family, const Blocks& b, const Reader& r) {
  switch (family) {
    case Family::LogReg:
    case Family::L1LogReg:
      return LogisticData{take(b.matrices, "a", r), take(b.vectors, "b", r),
                          take(b.scalars, "gamma", r)};
    case Family::Lse:
      return LseData{take(b.matrices, "a", r), take(b.vectors, "b", r),
                     take(b.scalars, "gamma", r)};
    case Family::Quad:
      return QuadraticData{take(b.matrices, "hessian", r), take(b.vectors, "linear", r)};
    case Family::MaxCut:
      return MaxCutData{take(b.matrices, "c", r), take(b.scalars, "eps", r),
                        take(b.scalars, "eta", r)};
    case Family::L1LeastSquares:
    case Family::L1Constrained:
      return LeastSquaresData{take(b.matrices, "a", r), take(b.vectors, "b", r)};
    case Family::Cubic:
      return CubicData{take(b.matrices, "hessian", r), take(b.vectors, "linear", r),
                       take(b.scalars, "m", r)};
  }
  r.fail("unhandled family");
}

}  // namespace

void write_problem(std::ostream& out, const ProblemInstance& inst) {
  const ProblemParams& p = inst.params;
  const CompositeProblem& pr = inst.problem;
  out << kProblemMagic << ' ' << kProblemFormatVersion << '\n';
  out << "param family " << family_name(p.family) << '\n';
  out << "param recipe " << recipe_name(p.family) << '\n';
  out << "param dim " << p.dim << '\n';
  out << "param samples " << p.sample_count() << '\n';
  out << "param seed " << p.seed << '\n';
  out << "param gamma " << num(p.gamma_value()) << '\n';
  out << "param eta " << num(p.eta) << '\n';
  out << "param eps " << num(p.eps) << '\n';
  out << "param cubic_m " << num(p.cubic_m) << '\n';
  out << "param radius " << num(p.radius) << '\n';
  out << "param noise_sd " << num(p.noise_sd) << '\n';
  out << "param uniform_scale " << num(p.uniform_scale) << '\n';
  out << "param binarize_labels " << (p.binarize_labels ? 1 : 0) << '\n';
  out << "param L_estimate " << num(pr.L_estimate) << '\n';
  out << "param L_paper " << num(pr.L_paper) << '\n';
  out << "param L_safe " << num(pr.L_safe) << '\n';
  std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, prox::L1Term>) out << "prox l1 " << num(t.gamma) << '\n';
        else if constexpr (std::is_same_v<T, prox::L1BallTerm>) out << "prox l1ball " << num(t.radius) << '\n';
        else out << "prox zero\n";
      },
      pr.prox_term);
  put_vector(out, "x0", inst.x0);
  put_data(out, pr.smooth.data());
  out << "end\n";
}

ProblemInstance read_problem(std::istream& in) {
  Reader r{in};
  {
    const auto head = r.words();
    if (head.size() != 2 || head[0] != kProblemMagic) r.fail("not a problem file");
    if (r.parse_size(head[1]) != static_cast<std::size_t>(kProblemFormatVersion)) {
      r.fail("unsupported format version " + head[1]);
    }
  }
  Blocks b;
  bool ended = false;
  while (!ended) {
    const auto w = r.words();
    const std::string& kind = w[0];
    if (kind == "end") {
      ended = true;
    } else if (kind == "param" && w.size() == 3) {
      b.params[w[1]] = w[2];
    } else if (kind == "scalar" && w.size() == 3) {
      b.scalars[w[1]] = r.parse_double(w[2]);
    } else if (kind == "prox" && w.size() >= 2) {
      b.prox_kind = w[1];
      if (w.size() == 3) b.prox_arg = r.parse_double(w[2]);
    } else if (kind == "vector" && w.size() == 3) {
      const std::size_t n = r.parse_size(w[2]);
      b.vectors[w[1]] = DenseVector(n == 0 ? std::vector<double>{} : r.numbers(n));
    } else if (kind == "matrix" && w.size() == 4) {
      const std::size_t rows = r.parse_size(w[2]);
      const std::size_t cols = r.parse_size(w[3]);
      std::vector<double> vals;
      vals.reserve(rows * cols);
      for (std::size_t i = 0; i < rows; ++i) {
        const auto row = r.numbers(cols);
        vals.insert(vals.end(), row.begin(), row.end());
      }
      b.matrices[w[1]] = DenseMatrix(rows, cols, std::move(vals));
    } else {
      r.fail("unrecognized entry '" + kind + "'");
    }
  }

  ProblemParams p;
  const auto fam = parse_family(take(b.params, "family", r));
  if (!fam) r.fail("unknown family '" + b.params["family"] + "'");
  p.family = *fam;
  p.dim = r.parse_size(take(b.params, "dim", r));
  p.samples = r.parse_size(take(b.params, "samples", r));
  p.seed = std::stoull(take(b.params, "seed", r));
  p.gamma = r.parse_double(take(b.params, "gamma", r));
  p.eta = r.parse_double(take(b.params, "eta", r));
  p.eps = r.parse_double(take(b.params, "eps", r));
  p.cubic_m = r.parse_double(take(b.params, "cubic_m", r));
  p.radius = r.parse_double(take(b.params, "radius", r));
  p.noise_sd = r.parse_double(take(b.params, "noise_sd", r));
  p.uniform_scale = r.parse_double(take(b.params, "uniform_scale", r));
  p.binarize_labels = take(b.params, "binarize_labels", r) == "1";

  prox::ProxTerm term = prox::ZeroTerm{};
  if (b.prox_kind == "l1") term = prox::make_l1(b.prox_arg);
  else if (b.prox_kind == "l1ball") term = prox::make_l1_ball(b.prox_arg);
  else if (b.prox_kind != "zero") r.fail("unknown prox '" + b.prox_kind + "'");

  ProblemInstance inst;
  inst.params = p;
  inst.x0 = take(b.vectors, "x0", r);
  inst.problem.smooth = SmoothOracle(assemble(p.family, b, r));
  inst.problem.prox_term = term;
  inst.problem.L_estimate = r.parse_double(take(b.params, "L_estimate", r));
  inst.problem.L_paper = r.parse_double(take(b.params, "L_paper", r));
  inst.problem.L_safe = r.parse_double(take(b.params, "L_safe", r));
  if (inst.x0.size() != inst.problem.dim()) r.fail("x0 length does not match the data");
  return inst;
}

void save_problem(const std::filesystem::path& path, const ProblemInstance& inst) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open " + path.string() + " for writing");
  write_problem(out, inst);
  out.flush();
  if (!out) throw std::ios_base::failure("write failed for " + path.string());
}

ProblemInstance load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  try {
    return read_problem(in);
  } catch (const ProblemFormatError& e) {
    throw ProblemFormatError(path.string() + ": " + e.what());
  }
}

}  // namespace zostep::problems
