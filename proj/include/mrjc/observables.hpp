#pragma once
// Everything plotted in a run: level populations, revival probability, mean
// boson numbers, series assembly over a trajectory, and revival-peak
// extraction with local quadratic refinement.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrjc/dynamics.hpp"
#include "mrjc/model.hpp"
#include "mrjc/types.hpp"

namespace mrjc {

template <class Scalar>
void check_labeled(const StateVector<Scalar>& psi, const char* who) {
  if (psi.sites == nullptr)
    throw std::invalid_argument(std::string(who) + ": state carries no basis labels");
}

template <class Scalar>
void check_same_basis(const StateVector<Scalar>& a, const StateVector<Scalar>& b,
                      const char* who) {
  check_labeled(a, who);
  check_labeled(b, who);
  if (a.size() != b.size() ||
      (a.sites != b.sites && !std::equal(a.sites, a.sites + a.size(), b.sites)))
    throw std::invalid_argument(std::string(who) + ": basis mismatch");
}

template <class ScalarT = double>
struct Populations {
  using Scalar = ScalarT;
  Scalar P1{}, P2{}, P3{};
};

template <class Scalar>
Populations<Scalar> populations(const StateVector<Scalar>& psi) {
  check_labeled(psi, "populations");
  Populations<Scalar> p;
  for (Index i = 0; i < psi.size(); ++i) {
    const Scalar w = std::norm(psi.amplitudes[i]);
    switch (psi.sites[i].level) {
      case 1: p.P1 += w; break;
      case 2: p.P2 += w; break;
      default: p.P3 += w; break;
    }
  }
  return p;
}

// |<psi0|psit>|^2, the return probability to psi0.
template <class Scalar>
Scalar revival_probability(const StateVector<Scalar>& psi0,
                           const StateVector<Scalar>& psit) {
  check_same_basis(psi0, psit, "revival_probability");
  return std::norm(psi0.amplitudes.dot(psit.amplitudes));
}

template <class ScalarT = double>
struct BosonMeans {
  using Scalar = ScalarT;
  Scalar n_mean{}, k_mean{};
};

template <class Scalar>
BosonMeans<Scalar> mean_boson_numbers(const StateVector<Scalar>& psi) {
  check_labeled(psi, "mean_boson_numbers");
  BosonMeans<Scalar> m;
  for (Index i = 0; i < psi.size(); ++i) {
    const Scalar w = std::norm(psi.amplitudes[i]);
    m.n_mean += w * Scalar(psi.sites[i].n);
    m.k_mean += w * Scalar(psi.sites[i].k);
  }
  return m;
}

// The full set of reported observables on a common time grid.
template <class ScalarT = double>
struct ObservableSeries {
  using Scalar = ScalarT;
  VectorX<Scalar> times;
  VectorX<Scalar> P1, P2, P3;  // level populations
  VectorX<Scalar> revival;     // |<psi(0)|psi(t)>|^2
  VectorX<Scalar> n_mean, k_mean;

  Index samples() const { return times.size(); }
};

using ObservableSeriesd = ObservableSeries<double>;

template <class Scalar>
ObservableSeries<Scalar> observable_series(const Trajectory<Scalar>& traj,
                                           const StateVector<Scalar>& psi0) {
  if (traj.sites == nullptr)
    throw std::invalid_argument("observable_series: trajectory carries no basis labels");
  check_labeled(psi0, "observable_series");
  if (psi0.size() != traj.amplitudes.rows() ||
      (psi0.sites != traj.sites &&
       !std::equal(psi0.sites, psi0.sites + psi0.size(), traj.sites)))
    throw std::invalid_argument("observable_series: basis mismatch");
  const Index nt = traj.samples();
  const Index dim = traj.amplitudes.rows();
  ObservableSeries<Scalar> out;
  out.times = traj.times;
  out.P1.resize(nt);
  out.P2.resize(nt);
  out.P3.resize(nt);
  out.revival.resize(nt);
  out.n_mean.resize(nt);
  out.k_mean.resize(nt);
  for (Index t = 0; t < nt; ++t) {
    Scalar p1{}, p2{}, p3{}, nm{}, km{};
    for (Index i = 0; i < dim; ++i) {
      const Scalar w = std::norm(traj.amplitudes(i, t));
      const BasisState& s = traj.sites[i];
      switch (s.level) {
        case 1: p1 += w; break;
        case 2: p2 += w; break;
        default: p3 += w; break;
      }
      nm += w * Scalar(s.n);
      km += w * Scalar(s.k);
    }
    out.P1[t] = p1;
    out.P2[t] = p2;
    out.P3[t] = p3;
    out.n_mean[t] = nm;
    out.k_mean[t] = km;
    out.revival[t] = std::norm(psi0.amplitudes.dot(traj.amplitudes.col(t)));
  }
  return out;
}

// Largest absolute change of any reported observable between two series on
// the same time grid (the doubling-stability measure).
template <class Scalar>
Scalar series_delta(const ObservableSeries<Scalar>& a, const ObservableSeries<Scalar>& b) {
  if (a.samples() != b.samples())
    throw std::invalid_argument("series_delta: sample count mismatch");
  const auto d = [](const VectorX<Scalar>& x, const VectorX<Scalar>& y) {
    return (x - y).cwiseAbs().maxCoeff();
  };
  return std::max({d(a.P1, b.P1), d(a.P2, b.P2), d(a.P3, b.P3),
                   d(a.revival, b.revival), d(a.n_mean, b.n_mean),
                   d(a.k_mean, b.k_mean)});
}

template <class ScalarT = double>
struct RevivalPeak {
  using Scalar = ScalarT;
  Scalar t{};
  Scalar value{};
};

template <class ScalarT = double>
struct PeakAnalysis {
  using Scalar = ScalarT;
  std::vector<RevivalPeak<Scalar>> peaks;
  Scalar empirical_period{};  // mean spacing of consecutive peaks; 0 below 2 peaks
  bool constant = false;      // flat series; peaks holds the single trivial entry
};

using PeakAnalysisd = PeakAnalysis<double>;

// Vertex of the parabola through the three samples bracketing a discrete
// maximum (Newton form, so non-uniform grids work too).
template <class Scalar>
RevivalPeak<Scalar> refine_peak(const VectorX<Scalar>& times,
                                const VectorX<Scalar>& values, Index i) {
  const Scalar t0 = times[i - 1], t1 = times[i], t2 = times[i + 1];
  const Scalar y0 = values[i - 1], y1 = values[i], y2 = values[i + 1];
  const Scalar s1 = (y1 - y0) / (t1 - t0);
  const Scalar s2 = (y2 - y1) / (t2 - t1);
  const Scalar curv = (s2 - s1) / (t2 - t0);
  if (!(curv < Scalar(0))) return {t1, y1};  // flat top: keep the sample
  Scalar tv = (t0 + t1) / Scalar(2) - s1 / (Scalar(2) * curv);
  tv = std::clamp(tv, t0, t2);
  const Scalar yv = y0 + s1 * (tv - t0) + curv * (tv - t0) * (tv - t1);
  return {tv, yv};
}

// Interior local maxima of `values` above `threshold`, each refined
// quadratically.  A series that is flat to 1e-12 is flagged and reported as
// the single trivial peak at the first sample.  An empty peak list is a
// value, not an error.
template <class Scalar>
PeakAnalysis<Scalar> revival_peaks(const VectorX<Scalar>& times,
                                   const VectorX<Scalar>& values,
                                   Scalar threshold = Scalar(0.5)) {
  if (times.size() != values.size() || times.size() == 0)
    throw std::invalid_argument(
        "revival_peaks: times and values must have equal nonzero size");
  check_strictly_increasing(times);
  PeakAnalysis<Scalar> out;
  if (values.maxCoeff() - values.minCoeff() <= Scalar(1e-12)) {
    out.constant = true;
    out.peaks.push_back({times[0], values[0]});
    return out;
  }
  for (Index i = 1; i + 1 < times.size(); ++i) {
    // at a flat-topped pair the first sample wins ('>' left, '>=' right)
    if (!(values[i] > values[i - 1]) || !(values[i] >= values[i + 1])) continue;
    if (!(values[i] > threshold)) continue;
    out.peaks.push_back(refine_peak(times, values, i));
  }
  if (out.peaks.size() >= 2)
    out.empirical_period = (out.peaks.back().t - out.peaks.front().t) /
                           Scalar(out.peaks.size() - 1);
  return out;
}

template <class Scalar>
PeakAnalysis<Scalar> revival_peaks(const ObservableSeries<Scalar>& series,
                                   Scalar threshold = Scalar(0.5)) {
  return revival_peaks(series.times, series.revival, threshold);
}

}  // namespace mrjc
