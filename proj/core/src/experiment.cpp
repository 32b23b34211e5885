#include "bqs/experiment.hpp"

#include "bqs/errors.hpp"
#include "bqs/random.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace bqs {

double window_overlap_fraction(double x_center, SlitIndex slit, const ExperimentGeometry& g) {
  const double half_window = 0.5 * g.detector_slit_width;
  const double center = slit.value() * g.slit_spacing;
  const double lo = std::max(x_center - half_window, center - g.slit_half_width);
  const double hi = std::min(x_center + half_window, center + g.slit_half_width);
  return std::max(0.0, hi - lo) / (2.0 * g.slit_half_width);
}

ScanRates expected_scan_rates(const QuditPureState& state, SlitIndex fixed_slit,
                              std::span<const double> positions, double flux,
                              const ExperimentGeometry& g) {
  const auto geom = validate(g);
  if (state.dimension != geom.dimension) {
    throw ValidationError("state dimension does not match geometry dimension");
  }
  if (!fixed_slit.valid_for(geom.dimension)) {
    throw ValidationError("fixed slit label invalid for dimension " +
                          std::to_string(geom.dimension));
  }
  if (!(flux >= 0.0)) throw ValidationError("negative pair flux");
  const auto slits = slit_indices(geom.dimension);
  const int span = geom.dimension - 1;
  const int fixed_row = (fixed_slit.twice_l + span) / 2;

  // Per-slit weights: joint with the fixed slit for coincidences, marginal
  // over photon 1 for singles.
  std::vector<double> joint(slits.size(), 0.0), marginal(slits.size(), 0.0);
  for (size_t j = 0; j < slits.size(); ++j) {
    joint[j] = std::norm(state.at(fixed_row, static_cast<int>(j)));
    for (size_t i = 0; i < slits.size(); ++i) {
      marginal[j] += std::norm(state.at(static_cast<int>(i), static_cast<int>(j)));
    }
  }

  ScanRates rates;
  rates.singles.resize(positions.size());
  rates.coincidences.resize(positions.size());
  for (size_t p = 0; p < positions.size(); ++p) {
    double s = 0.0, c = 0.0;
    for (size_t j = 0; j < slits.size(); ++j) {
      const double frac = window_overlap_fraction(positions[p], slits[j], geom);
      if (frac == 0.0) continue;
      s += marginal[j] * frac;
      c += joint[j] * frac;
    }
    rates.singles[p] = flux * s;
    rates.coincidences[p] = flux * c;
  }
  return rates;
}

ScanRecord near_field_scan(const QuditPureState& state, SlitIndex fixed_slit,
                           std::span<const double> positions, double flux, double acquisition,
                           std::uint64_t seed, const ExperimentGeometry& g) {
  if (!(acquisition >= 0.0)) throw ValidationError("negative acquisition time");
  const auto rates = expected_scan_rates(state, fixed_slit, positions, flux, g);
  ScanRecord rec;
  rec.fixed_slit = fixed_slit;
  rec.positions.assign(positions.begin(), positions.end());
  rec.acquisition = acquisition;
  rec.seed = seed;
  rec.mean_pair_flux = flux;
  rec.singles.resize(positions.size());
  rec.coincidences.resize(positions.size());
  auto rng = record_stream(seed, fixed_slit.twice_l);
  for (size_t p = 0; p < positions.size(); ++p) {
    rec.singles[p] = poisson_sample(rates.singles[p] * acquisition, rng);
    rec.coincidences[p] = poisson_sample(rates.coincidences[p] * acquisition, rng);
  }
  return rec;
}

std::vector<double> default_scan_grid(const ExperimentGeometry& g, double step) {
  if (!(step > 0.0)) throw ValidationError("non-positive scan step");
  const double l_max = 0.5 * static_cast<double>(g.dimension - 1);
  const double extent = l_max * g.slit_spacing + 0.5 * g.slit_spacing;
  std::vector<double> grid;
  const auto n = static_cast<long>(std::floor(extent / step + 1e-9));
  grid.reserve(static_cast<size_t>(2 * n + 1));
  for (long i = -n; i <= n; ++i) {
    grid.push_back(static_cast<double>(i) * step);
  }
  return grid;
}

bool scan_grid_covers_aperture(std::span<const double> positions, const ExperimentGeometry& g) {
  if (positions.empty()) return false;
  const auto [lo, hi] = std::minmax_element(positions.begin(), positions.end());
  const double l_max = 0.5 * static_cast<double>(g.dimension - 1);
  const double edge = l_max * g.slit_spacing + g.slit_half_width;
  return *lo <= -edge && *hi >= edge;
}

namespace {

ProbabilityTable table_from_binned(const std::vector<std::vector<double>>& counts, int dim) {
  double total = 0.0;
  for (const auto& row : counts) {
    for (const double c : row) total += c;
  }
  if (!(total > 0.0)) {
    throw ValidationError("probability table has no counts");
  }
  ProbabilityTable table;
  table.dimension = dim;
  table.probability.resize(static_cast<size_t>(dim) * static_cast<size_t>(dim));
  table.std_err.resize(table.probability.size());
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const double c = counts[static_cast<size_t>(i)][static_cast<size_t>(j)];
      table.probability[static_cast<size_t>(i) * static_cast<size_t>(dim) +
                        static_cast<size_t>(j)] = c / total;
      table.std_err[static_cast<size_t>(i) * static_cast<size_t>(dim) +
                    static_cast<size_t>(j)] = std::sqrt(c) / total;
    }
  }
  return table;
}

} // namespace

ProbabilityTable probability_table(std::span<const ScanRecord> records,
                                   const ExperimentGeometry& g) {
  const auto geom = validate(g);
  const auto slits = slit_indices(geom.dimension);
  const int dim = geom.dimension;
  const int span = dim - 1;

  std::set<int> seen;
  for (const auto& rec : records) {
    if (!rec.fixed_slit.valid_for(dim)) {
      throw ValidationError("record fixed slit invalid for dimension " + std::to_string(dim));
    }
    if (!seen.insert(rec.fixed_slit.twice_l).second) {
      throw ValidationError("duplicated fixed slit " + rec.fixed_slit.label());
    }
  }
  if (static_cast<int>(seen.size()) != dim) {
    throw ValidationError("need one scan record per fixed slit (got " +
                          std::to_string(seen.size()) + " of " + std::to_string(dim) + ")");
  }

  std::vector<std::vector<double>> counts(static_cast<size_t>(dim),
                                          std::vector<double>(static_cast<size_t>(dim), 0.0));
  for (const auto& rec : records) {
    const int row = (rec.fixed_slit.twice_l + span) / 2;
    if (rec.positions.size() != rec.coincidences.size()) {
      throw ValidationError("scan record positions/coincidences length mismatch");
    }
    for (size_t p = 0; p < rec.positions.size(); ++p) {
      const auto slit = nearest_slit(rec.positions[p], geom);
      if (!slit) continue; // dead zone between slits
      const int col = (slit->twice_l + span) / 2;
      counts[static_cast<size_t>(row)][static_cast<size_t>(col)] +=
          static_cast<double>(rec.coincidences[p]);
    }
  }
  return table_from_binned(counts, dim);
}

ProbabilityTable ideal_probability_table(const QuditPureState& state,
                                         std::span<const double> positions,
                                         const ExperimentGeometry& g) {
  const auto geom = validate(g);
  const auto slits = slit_indices(geom.dimension);
  const int dim = geom.dimension;
  std::vector<std::vector<double>> counts(static_cast<size_t>(dim),
                                          std::vector<double>(static_cast<size_t>(dim), 0.0));
  for (int row = 0; row < dim; ++row) {
    const auto rates =
        expected_scan_rates(state, slits[static_cast<size_t>(row)], positions, 1.0, geom);
    for (size_t p = 0; p < positions.size(); ++p) {
      const auto slit = nearest_slit(positions[p], geom);
      if (!slit) continue;
      const int col = (slit->twice_l + dim - 1) / 2;
      counts[static_cast<size_t>(row)][static_cast<size_t>(col)] += rates.coincidences[p];
    }
  }
  auto table = table_from_binned(counts, dim);
  std::fill(table.std_err.begin(), table.std_err.end(), 0.0);
  return table;
}

QuditPureState reconstruct_state(const ProbabilityTable& table, const ExperimentGeometry& g) {
  const auto geom = validate(g);
  if (table.dimension != geom.dimension) {
    throw ValidationError("table dimension does not match geometry dimension");
  }
  const auto slits = slit_indices(geom.dimension);
  const double chirp =
      geom.wavenumber * geom.slit_spacing * geom.slit_spacing / (2.0 * geom.z_aperture);
  QuditPureState state(geom.dimension);
  for (size_t i = 0; i < slits.size(); ++i) {
    for (size_t j = 0; j < slits.size(); ++j) {
      const double p = table.at(static_cast<int>(i), static_cast<int>(j));
      if (p < 0.0) throw ValidationError("negative probability in table");
      const double mag = std::sqrt(p);
      const bool anti = slits[i].twice_l == -slits[j].twice_l;
      const double l = slits[i].value();
      state.at(static_cast<int>(i), static_cast<int>(j)) =
          anti ? std::polar(mag, chirp * l * l) : Complex{mag, 0.0};
    }
  }
  return state;
}

double fidelity(const QuditPureState& candidate, const QuditPureState& reference,
                bool renormalize_candidate) {
  if (candidate.dimension != reference.dimension) {
    throw ValidationError("fidelity requires equal dimensions");
  }
  const QuditPureState ref = reference.normalized();
  Complex overlap{0.0, 0.0};
  for (size_t i = 0; i < ref.amplitudes.size(); ++i) {
    overlap += std::conj(ref.amplitudes[i]) * candidate.amplitudes[i];
  }
  double f = std::norm(overlap);
  if (renormalize_candidate) {
    const double n2 = candidate.norm() * candidate.norm();
    if (!(n2 > 0.0)) throw NumericalError("cannot renormalize the zero state");
    f /= n2;
  }
  return f;
}

} // namespace bqs
