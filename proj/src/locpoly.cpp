#include "seqsmooth/locpoly.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "seqsmooth/errors.hpp"

namespace seqsmooth {

namespace {

void check_degree(int degree) {
  if (degree < 0 || degree + 1 > kMaxBasis)
    throw std::invalid_argument("SequentialLocPoly: degree must be in [0, " +
                                std::to_string(kMaxBasis - 1) + "]");
}

// Exact inverse of (ridge*I + w vv^T), arranged so no term cancels:
// the diagonal numerator ridge + w*(q - v_i^2) is a sum of positives,
// with q - v_i^2 accumulated directly as sum_{j != i} v_j^2.
void seed_first_inverse(SmallMat& s_inv, const double* v, double w,
                        double ridge) {
  const int n = s_inv.n;
  double q = 0.0;
  for (int j = 0; j < n; ++j) q += v[j] * v[j];
  const double denom = ridge * (ridge + w * q);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double val = -w * v[i] * v[j] / denom;
      s_inv.at(i, j) = val;
      s_inv.at(j, i) = val;
    }
    double rest = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) rest += v[j] * v[j];
    s_inv.at(i, i) = (ridge + w * rest) / denom;
  }
}

}  // namespace

SequentialLocPoly::SequentialLocPoly(EvaluationGrid grid, KernelSpec kernel,
                                     BandwidthSchedule schedule, int degree,
                                     double ridge, ExecPolicy exec)
    : grid_(grid),
      kernel_(std::move(kernel)),
      schedule_(schedule),
      degree_(degree),
      ridge_(ridge),
      exec_(exec) {
  check_degree(degree);
  if (!(ridge > 0.0))
    throw std::invalid_argument("SequentialLocPoly: ridge must be > 0");
  const int dim = degree + 1;
  states_.resize(static_cast<std::size_t>(grid_.count()));
  for (int i = 0; i < grid_.count(); ++i) {
    auto& st = states_[static_cast<std::size_t>(i)];
    st.x0 = grid_.point(i);
    st.s_inv = SmallMat::identity_scaled(dim, 1.0 / ridge);
    st.b = SmallVec::zero(dim);
  }
}

SequentialLocPoly SequentialLocPoly::with_auto_schedule(
    EvaluationGrid grid, KernelSpec kernel, double c, int degree, double ridge,
    ExecPolicy exec) {
  return SequentialLocPoly(grid, std::move(kernel),
                           BandwidthSchedule::for_degree(c, degree), degree,
                           ridge, exec);
}

bool SequentialLocPoly::observe(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) return false;
  const double h = schedule_.at(n_ + 1);
  const double radius = kernel_.cutoff_radius * h;
  const auto [first, last] = grid_.index_range(x, radius);
  const int dim = degree_ + 1;
  GridPointState* states = states_.data();

  auto update_point = [&](int i) {
    GridPointState& st = states[i];
    const double w = scaled_weight_unchecked(kernel_, h, x, st.x0);
    if (w == 0.0) return;
    double feat[kMaxBasis];
    feat[0] = 1.0;
    const double dx = x - st.x0;
    for (int j = 1; j < dim; ++j) feat[j] = feat[j - 1] * dx;
    if (st.touched) {
      apply_rank_one_inverse_update(st.s_inv, feat, w);
    } else {
      seed_first_inverse(st.s_inv, feat, w, ridge_);
      st.touched = true;
    }
    const double wy = w * y;
    for (int j = 0; j < dim; ++j) st.b[j] += wy * feat[j];
  };

  if (exec_ == ExecPolicy::OpenMP) {
#pragma omp parallel for schedule(static)
    for (int i = first; i < last; ++i) update_point(i);
  } else {
    for (int i = first; i < last; ++i) update_point(i);
  }
  ++n_;
  return true;
}

double SequentialLocPoly::predict_at(int i) const {
  if (n_ == 0) throw EmptyEstimatorError("SequentialLocPoly: no observations");
  if (i < 0 || i >= grid_.count())
    throw std::out_of_range("SequentialLocPoly: grid index");
  const auto& st = states_[static_cast<std::size_t>(i)];
  return intercept_of(st.s_inv, st.b);
}

double SequentialLocPoly::predict(double x) const {
  if (n_ == 0) throw EmptyEstimatorError("SequentialLocPoly: no observations");
  const auto loc = grid_.locate(x);
  if (loc.on_point)
    return predict_at(loc.frac == 0.0 ? loc.left : loc.left + 1);
  const double a = predict_at(loc.left);
  const double b = predict_at(loc.left + 1);
  return a + (b - a) * loc.frac;
}

std::vector<double> SequentialLocPoly::predictions() const {
  std::vector<double> out(static_cast<std::size_t>(grid_.count()));
  for (int i = 0; i < grid_.count(); ++i)
    out[static_cast<std::size_t>(i)] = predict_at(i);
  return out;
}

void SequentialLocPoly::save(std::ostream& out) const {
  nlohmann::json j;
  j["format"] = "seqsmooth-locpoly-state";
  j["version"] = 1;
  j["n"] = n_;
  j["degree"] = degree_;
  j["ridge"] = ridge_;
  j["kernel"] = kernel_.name;
  j["schedule"] = {{"c", schedule_.c}, {"exponent", schedule_.exponent}};
  j["grid"] = {{"lo", grid_.lo()}, {"hi", grid_.hi()}, {"count", grid_.count()}};
  const int dim = degree_ + 1;
  nlohmann::json states = nlohmann::json::array();
  for (const auto& st : states_) {
    nlohmann::json s;
    std::vector<double> sinv(static_cast<std::size_t>(dim * dim));
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        sinv[static_cast<std::size_t>(r * dim + c)] = st.s_inv.at(r, c);
    std::vector<double> b(static_cast<std::size_t>(dim));
    for (int r = 0; r < dim; ++r) b[static_cast<std::size_t>(r)] = st.b[r];
    s["s_inv"] = sinv;
    s["b"] = b;
    s["touched"] = st.touched;
    states.push_back(std::move(s));
  }
  j["states"] = std::move(states);
  out << j.dump(2) << "\n";
}

void SequentialLocPoly::save_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  save(out);
}

SequentialLocPoly SequentialLocPoly::load(std::istream& in) {
  nlohmann::json j = nlohmann::json::parse(in);
  if (j.value("format", "") != "seqsmooth-locpoly-state" ||
      j.value("version", 0) != 1)
    throw std::runtime_error("unrecognized locpoly state dump");
  EvaluationGrid grid(j["grid"]["lo"].get<double>(),
                      j["grid"]["hi"].get<double>(),
                      j["grid"]["count"].get<int>());
  BandwidthSchedule schedule(j["schedule"]["c"].get<double>(),
                             j["schedule"]["exponent"].get<double>());
  SequentialLocPoly est(grid, kernel_by_name(j["kernel"].get<std::string>()),
                        schedule, j["degree"].get<int>(),
                        j["ridge"].get<double>());
  est.n_ = j["n"].get<long>();
  const int dim = est.degree_ + 1;
  const auto& states = j["states"];
  if (static_cast<int>(states.size()) != grid.count())
    throw std::runtime_error("locpoly state dump: grid size mismatch");
  for (int i = 0; i < grid.count(); ++i) {
    auto& st = est.states_[static_cast<std::size_t>(i)];
    const auto sinv = states[static_cast<std::size_t>(i)]["s_inv"]
                          .get<std::vector<double>>();
    const auto b =
        states[static_cast<std::size_t>(i)]["b"].get<std::vector<double>>();
    if (static_cast<int>(sinv.size()) != dim * dim ||
        static_cast<int>(b.size()) != dim)
      throw std::runtime_error("locpoly state dump: state size mismatch");
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        st.s_inv.at(r, c) = sinv[static_cast<std::size_t>(r * dim + c)];
    for (int r = 0; r < dim; ++r) st.b[r] = b[static_cast<std::size_t>(r)];
    st.touched = states[static_cast<std::size_t>(i)]["touched"].get<bool>();
  }
  return est;
}

SequentialLocPoly SequentialLocPoly::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return load(in);
}

SequentialNw::SequentialNw(EvaluationGrid grid, KernelSpec kernel,
                           BandwidthSchedule schedule, ExecPolicy exec)
    : grid_(grid),
      kernel_(std::move(kernel)),
      schedule_(schedule),
      exec_(exec),
      num_(static_cast<std::size_t>(grid.count()), 0.0),
      den_(static_cast<std::size_t>(grid.count()), 0.0) {}

bool SequentialNw::observe(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) return false;
  const double h = schedule_.at(n_ + 1);
  const double radius = kernel_.cutoff_radius * h;
  const auto [first, last] = grid_.index_range(x, radius);
  double* num = num_.data();
  double* den = den_.data();

  if (exec_ == ExecPolicy::OpenMP) {
#pragma omp parallel for schedule(static)
    for (int i = first; i < last; ++i) {
      const double w = scaled_weight_unchecked(kernel_, h, x, grid_.point(i));
      num[i] += w * y;
      den[i] += w;
    }
  } else {
    for (int i = first; i < last; ++i) {
      const double w = scaled_weight_unchecked(kernel_, h, x, grid_.point(i));
      num[i] += w * y;
      den[i] += w;
    }
  }
  ++n_;
  return true;
}

double SequentialNw::predict_at(int i) const {
  if (n_ == 0) throw EmptyEstimatorError("SequentialNw: no observations");
  if (i < 0 || i >= grid_.count())
    throw std::out_of_range("SequentialNw: grid index");
  const double den = den_[static_cast<std::size_t>(i)];
  if (den <= kDenFloor)
    throw LowMassError("SequentialNw: no local data at grid point");
  return num_[static_cast<std::size_t>(i)] / den;
}

double SequentialNw::predict(double x) const {
  if (n_ == 0) throw EmptyEstimatorError("SequentialNw: no observations");
  const auto loc = grid_.locate(x);
  if (loc.on_point)
    return predict_at(loc.frac == 0.0 ? loc.left : loc.left + 1);
  const double a = predict_at(loc.left);
  const double b = predict_at(loc.left + 1);
  return a + (b - a) * loc.frac;
}

}  // namespace seqsmooth
