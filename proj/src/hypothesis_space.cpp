#include "gbs/hypothesis_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "gbs/arrangement.hpp"
#include "gbs/errors.hpp"

namespace gbs {

namespace {

std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Merge duplicate columns (same equivalence class), validate row uniqueness,
// and scan for complement pairs. All builders funnel through here.
HypothesisSpace finalize_space(const SignMatrix& piece_columns,
                               std::vector<Eigen::VectorXd> piece_witnesses,
                               Family family) {
  const int n = static_cast<int>(piece_columns.rows());
  const int pieces = static_cast<int>(piece_columns.cols());
  if (n < 1 || pieces < 1) throw EmptyMatrix("response matrix needs at least one row and column");

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < pieces; ++j) {
      const int v = piece_columns(i, j);
      if (v != 1 && v != -1) {
        throw DomainError("response entries must be -1 or +1, got " + std::to_string(v));
      }
    }
  }

  HypothesisSpace space;
  space.family = std::move(family);
  space.source_columns.assign(pieces, -1);

  std::map<std::vector<int>, int> seen;
  std::vector<int> kept;
  for (int j = 0; j < pieces; ++j) {
    std::vector<int> col(n);
    for (int i = 0; i < n; ++i) col[i] = piece_columns(i, j);
    auto [it, inserted] = seen.emplace(std::move(col), static_cast<int>(kept.size()));
    if (inserted) kept.push_back(j);
    space.source_columns[j] = it->second;
  }

  const int m = static_cast<int>(kept.size());
  space.responses.resize(n, m);
  space.witnesses.resize(m);
  for (int c = 0; c < m; ++c) {
    space.responses.col(c) = piece_columns.col(kept[c]);
    space.witnesses[c] = std::move(piece_witnesses[kept[c]]);
  }

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (space.responses.row(i) == space.responses.row(j)) {
        throw DuplicateHypothesis("hypotheses " + std::to_string(i) + " and " +
                                  std::to_string(j) + " induce the same labeling");
      }
      if (space.responses.row(i) == -space.responses.row(j)) {
        space.complement_pairs.emplace_back(i, j);
      }
    }
  }
  return space;
}

BaseFamily base_of(const Family& family) {
  if (const auto* pooled = std::get_if<PooledFamily>(&family)) return pooled->base;
  return std::visit(
      [](const auto& f) -> BaseFamily {
        if constexpr (std::is_same_v<std::decay_t<decltype(f)>, PooledFamily>) {
          return f.base;
        } else {
          return f;
        }
      },
      family);
}

SignVector evaluate_base(const BaseFamily& family, const Eigen::VectorXd& x) {
  return std::visit(
      [&x](const auto& f) -> SignVector {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, ExplicitFamily>) {
          throw DomainError("explicit spaces take cell ids, not free query points");
        } else if constexpr (std::is_same_v<F, ThresholdFamily>) {
          SignVector out(f.count);
          const double t = x(0);
          for (int i = 1; i <= f.count; ++i) {
            out(i - 1) = sign_of(t - static_cast<double>(i) / (f.count + 1));
          }
          return out;
        } else if constexpr (std::is_same_v<F, IntervalFamily>) {
          SignVector out(static_cast<int>(f.bounds.size()));
          const double t = x(0);
          for (int i = 0; i < out.size(); ++i) {
            const auto& [a, b] = f.bounds[i];
            out(i) = (t >= a && t < b) ? +1 : -1;
          }
          return out;
        } else if constexpr (std::is_same_v<F, HalfspaceFamily>) {
          SignVector out(static_cast<int>(f.normals.rows()));
          for (int i = 0; i < out.size(); ++i) {
            out(i) = sign_of(f.normals.row(i).dot(x) + f.offsets(i));
          }
          return out;
        } else {  // RectangleFamily
          const int rects = static_cast<int>(f.lo.rows());
          SignVector out(f.with_complements ? 2 * rects : rects);
          for (int i = 0; i < rects; ++i) {
            bool inside = true;
            for (int j = 0; j < f.lo.cols(); ++j) {
              if (!(x(j) >= f.lo(i, j) && x(j) < f.hi(i, j))) {
                inside = false;
                break;
              }
            }
            out(i) = inside ? +1 : -1;
            if (f.with_complements) out(rects + i) = -out(i);
          }
          return out;
        }
      },
      family);
}

}  // namespace

SignVector evaluate_at(const Family& family, const Eigen::VectorXd& x) {
  return evaluate_base(base_of(family), x);
}

int family_hypothesis_count(const Family& family) {
  return std::visit(
      [](const auto& f) -> int {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, ExplicitFamily>) {
          return 0;
        } else if constexpr (std::is_same_v<F, ThresholdFamily>) {
          return f.count;
        } else if constexpr (std::is_same_v<F, IntervalFamily>) {
          return static_cast<int>(f.bounds.size());
        } else if constexpr (std::is_same_v<F, HalfspaceFamily>) {
          return static_cast<int>(f.normals.rows());
        } else if constexpr (std::is_same_v<F, RectangleFamily>) {
          const int r = static_cast<int>(f.lo.rows());
          return f.with_complements ? 2 * r : r;
        } else {
          PooledFamily const& p = f;
          return family_hypothesis_count(
              std::visit([](const auto& b) -> Family { return b; }, p.base));
        }
      },
      family);
}

std::string family_name(const Family& family) {
  return std::visit(
      [](const auto& f) -> std::string {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, ExplicitFamily>) return "explicit";
        if constexpr (std::is_same_v<F, ThresholdFamily>) return "thresholds";
        if constexpr (std::is_same_v<F, IntervalFamily>) return "intervals";
        if constexpr (std::is_same_v<F, HalfspaceFamily>) return "halfspaces";
        if constexpr (std::is_same_v<F, RectangleFamily>) return "rectangles";
        return "pooled";
      },
      family);
}

HypothesisSpace from_matrix(const SignMatrix& raw) {
  if (raw.rows() < 1 || raw.cols() < 1) {
    throw EmptyMatrix("explicit matrix needs at least one row and column");
  }
  std::vector<Eigen::VectorXd> witnesses(raw.cols());
  for (int j = 0; j < raw.cols(); ++j) {
    witnesses[j] = Eigen::VectorXd::Constant(1, static_cast<double>(j));
  }
  HypothesisSpace space = finalize_space(raw, std::move(witnesses), ExplicitFamily{});
  // Witnesses of an abstract space are the merged cell ids.
  for (int c = 0; c < space.cell_count(); ++c) {
    space.witnesses[c] = Eigen::VectorXd::Constant(1, static_cast<double>(c));
  }
  return space;
}

HypothesisSpace build_thresholds(int count) {
  if (count < 1) throw DomainError("threshold family needs count >= 1");
  ThresholdFamily family{count};
  const int pieces = count + 1;
  SignMatrix columns(count, pieces);
  std::vector<Eigen::VectorXd> witnesses(pieces);
  for (int j = 0; j < pieces; ++j) {
    Eigen::VectorXd w = Eigen::VectorXd::Constant(1, (j + 0.5) / (count + 1));
    columns.col(j) = evaluate_at(Family{family}, w);
    witnesses[j] = std::move(w);
  }
  return finalize_space(columns, std::move(witnesses), Family{family});
}

HypothesisSpace build_intervals(const std::vector<std::pair<double, double>>& bounds) {
  if (bounds.empty()) throw EmptyMatrix("interval family needs at least one interval");
  for (const auto& [a, b] : bounds) {
    if (!(0.0 <= a && a < b && b <= 1.0)) {
      throw InvalidInterval("interval [" + fmt_full(a) + ", " + fmt_full(b) +
                            ") is not within [0,1] with a < b");
    }
  }
  std::vector<double> edges{0.0, 1.0};
  for (const auto& [a, b] : bounds) {
    edges.push_back(a);
    edges.push_back(b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  IntervalFamily family{bounds};
  const int n = static_cast<int>(bounds.size());
  std::vector<Eigen::VectorXd> witnesses;
  std::vector<SignVector> cols;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    if (!(edges[k + 1] > edges[k])) continue;
    Eigen::VectorXd w = Eigen::VectorXd::Constant(1, 0.5 * (edges[k] + edges[k + 1]));
    cols.push_back(evaluate_at(Family{family}, w));
    witnesses.push_back(std::move(w));
  }
  SignMatrix columns(n, static_cast<int>(cols.size()));
  for (int j = 0; j < columns.cols(); ++j) columns.col(j) = cols[j];
  return finalize_space(columns, std::move(witnesses), Family{family});
}

HypothesisSpace build_halfspaces(const HalfspaceParams& params) {
  const int n = static_cast<int>(params.normals.rows());
  const int d = static_cast<int>(params.normals.cols());
  if (n < 1 || d < 1) throw EmptyMatrix("halfspace family needs >= 1 hypothesis and dimension");
  if (params.offsets.size() != n) throw DomainError("offsets/normals size mismatch");
  for (int i = 0; i < n; ++i) {
    if (std::abs(params.normals.row(i).norm() - 1.0) > 1e-12) {
      throw DomainError("normal " + std::to_string(i) + " is not unit length");
    }
  }
  Eigen::VectorXd lo = params.box_lo, hi = params.box_hi;
  if (lo.size() == 0) lo = Eigen::VectorXd::Constant(d, -params.box_radius);
  if (hi.size() == 0) hi = Eigen::VectorXd::Constant(d, params.box_radius);
  if (lo.size() != d || hi.size() != d || ((hi - lo).array() <= 0).any()) {
    throw DomainError("query box is empty or has the wrong dimension");
  }

  // Antipodal parameter pairs describe the same plane with flipped
  // orientation; the arrangement runs over unique planes.
  constexpr double kPlaneTol = 1e-9;
  Eigen::MatrixXd plane_normals(n, d);
  Eigen::VectorXd plane_offsets(n);
  std::vector<int> plane_of(n), orient(n);
  int planes = 0;
  for (int i = 0; i < n; ++i) {
    int found = -1, sign = 0;
    for (int k = 0; k < planes && found < 0; ++k) {
      const bool same = (params.normals.row(i) - plane_normals.row(k)).cwiseAbs().maxCoeff() <= kPlaneTol &&
                        std::abs(params.offsets(i) - plane_offsets(k)) <= kPlaneTol;
      const bool anti = (params.normals.row(i) + plane_normals.row(k)).cwiseAbs().maxCoeff() <= kPlaneTol &&
                        std::abs(params.offsets(i) + plane_offsets(k)) <= kPlaneTol;
      if (same) {
        found = k;
        sign = +1;
      } else if (anti) {
        found = k;
        sign = -1;
      }
    }
    if (found < 0) {
      plane_normals.row(planes) = params.normals.row(i);
      plane_offsets(planes) = params.offsets(i);
      found = planes++;
      sign = +1;
    }
    plane_of[i] = found;
    orient[i] = sign;
    for (int j = 0; j < i; ++j) {
      if (plane_of[j] == found && orient[j] == sign) {
        throw DuplicateHypothesis("halfspaces " + std::to_string(j) + " and " +
                                  std::to_string(i) + " coincide");
      }
    }
  }

  const auto cells = enumerate_cells(plane_normals.topRows(planes),
                                     plane_offsets.head(planes), lo, hi, params.margin);

  SignMatrix columns(n, static_cast<int>(cells.size()));
  std::vector<Eigen::VectorXd> witnesses(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (int i = 0; i < n; ++i) {
      columns(i, static_cast<int>(c)) = orient[i] * cells[c].plane_signs(plane_of[i]);
    }
    witnesses[c] = cells[c].witness;
  }
  HalfspaceFamily family{params.normals, params.offsets, lo, hi};
  return finalize_space(columns, std::move(witnesses), Family{family});
}

HypothesisSpace build_rectangles(const Eigen::MatrixXd& lo, const Eigen::MatrixXd& hi,
                                 bool include_complements) {
  const int rects = static_cast<int>(lo.rows());
  const int d = static_cast<int>(lo.cols());
  if (rects < 1 || d < 1) throw EmptyMatrix("rectangle family needs >= 1 rectangle and dimension");
  if (hi.rows() != rects || hi.cols() != d) throw DomainError("lo/hi shape mismatch");
  for (int i = 0; i < rects; ++i) {
    for (int j = 0; j < d; ++j) {
      if (!(0.0 <= lo(i, j) && lo(i, j) < hi(i, j) && hi(i, j) <= 1.0)) {
        throw InvalidInterval("rectangle " + std::to_string(i) + " has an empty side in dimension " +
                              std::to_string(j));
      }
    }
  }

  std::vector<std::vector<double>> edges(d);
  for (int j = 0; j < d; ++j) {
    edges[j] = {0.0, 1.0};
    for (int i = 0; i < rects; ++i) {
      edges[j].push_back(lo(i, j));
      edges[j].push_back(hi(i, j));
    }
    std::sort(edges[j].begin(), edges[j].end());
    edges[j].erase(std::unique(edges[j].begin(), edges[j].end()), edges[j].end());
  }

  RectangleFamily family{lo, hi, include_complements};
  const int n = include_complements ? 2 * rects : rects;

  std::vector<SignVector> cols;
  std::vector<Eigen::VectorXd> witnesses;
  std::vector<int> idx(d, 0);
  while (true) {
    Eigen::VectorXd w(d);
    bool valid = true;
    for (int j = 0; j < d; ++j) {
      if (idx[j] + 1 >= static_cast<int>(edges[j].size())) {
        valid = false;
        break;
      }
      w(j) = 0.5 * (edges[j][idx[j]] + edges[j][idx[j] + 1]);
    }
    if (valid) {
      cols.push_back(evaluate_at(Family{family}, w));
      witnesses.push_back(std::move(w));
    }
    // Odometer over the grid boxes.
    int j = 0;
    for (; j < d; ++j) {
      if (++idx[j] + 1 < static_cast<int>(edges[j].size())) break;
      idx[j] = 0;
    }
    if (j == d) break;
  }

  SignMatrix columns(n, static_cast<int>(cols.size()));
  for (int c = 0; c < columns.cols(); ++c) columns.col(c) = cols[c];
  return finalize_space(columns, std::move(witnesses), Family{family});
}

HypothesisSpace restrict_to_pool(const HypothesisSpace& space,
                                 const Eigen::MatrixXd& points) {
  const int pool = static_cast<int>(points.rows());
  if (pool < 1) throw EmptyMatrix("pool must be nonempty");
  const int n = space.hypothesis_count();
  SignMatrix columns(n, pool);
  std::vector<Eigen::VectorXd> witnesses(pool);
  for (int j = 0; j < pool; ++j) {
    witnesses[j] = points.row(j).transpose();
    columns.col(j) = evaluate_at(space.family, witnesses[j]);
  }
  PooledFamily family{base_of(space.family), points};
  return finalize_space(columns, std::move(witnesses), Family{family});
}

HypothesisSpace restrict_to_pool(const HypothesisSpace& space,
                                 const std::vector<int>& cell_ids) {
  if (cell_ids.empty()) throw EmptyMatrix("pool must be nonempty");
  const int n = space.hypothesis_count();
  SignMatrix columns(n, static_cast<int>(cell_ids.size()));
  Eigen::MatrixXd points(static_cast<int>(cell_ids.size()), space.witnesses[0].size());
  std::vector<Eigen::VectorXd> witnesses(cell_ids.size());
  for (std::size_t j = 0; j < cell_ids.size(); ++j) {
    const int id = cell_ids[j];
    if (id < 0 || id >= space.cell_count()) throw DomainError("pool cell id out of range");
    columns.col(static_cast<int>(j)) = space.responses.col(id);
    witnesses[j] = space.witnesses[id];
    points.row(static_cast<int>(j)) = space.witnesses[id].transpose();
  }
  PooledFamily family{base_of(space.family), points};
  return finalize_space(columns, std::move(witnesses), Family{family});
}

SignMatrix read_sign_matrix(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw ConfigError("matrix file is empty");
  int n = 0, m = 0;
  {
    std::istringstream head(line);
    if (!(head >> n >> m)) throw ConfigError("line 1: expected header 'N M'");
  }
  if (n < 1 || m < 1) throw EmptyMatrix("matrix header declares an empty matrix");
  SignMatrix out(n, m);
  for (int i = 0; i < n; ++i) {
    if (!next_line()) throw ConfigError("unexpected end of file: expected " + std::to_string(n) + " rows");
    std::istringstream row(line);
    for (int j = 0; j < m; ++j) {
      int v = 0;
      if (!(row >> v) || (v != 1 && v != -1)) {
        throw ConfigError("line " + std::to_string(lineno) + ": expected " + std::to_string(m) +
                          " entries in {-1, +1}");
      }
      out(i, j) = v;
    }
  }
  return out;
}

SignMatrix read_sign_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open matrix file: " + path);
  return read_sign_matrix(in);
}

void write_sign_matrix(std::ostream& out, const SignMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << (m(i, j) > 0 ? "+1" : "-1");
    }
    out << '\n';
  }
}

void write_witnesses(std::ostream& out, const HypothesisSpace& space) {
  for (const auto& w : space.witnesses) {
    for (int j = 0; j < w.size(); ++j) {
      if (j) out << ' ';
      out << fmt_full(w(j));
    }
    out << '\n';
  }
}

void save_space(const HypothesisSpace& space, const std::string& matrix_path,
                const std::string& witness_path) {
  std::ofstream mf(matrix_path);
  if (!mf) throw ConfigError("cannot write " + matrix_path);
  write_sign_matrix(mf, space.responses);
  std::ofstream wf(witness_path);
  if (!wf) throw ConfigError("cannot write " + witness_path);
  write_witnesses(wf, space);
}

}  // namespace gbs
