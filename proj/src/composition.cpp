#include "qsr/composition.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "qsr/error.hpp"

namespace qsr {

namespace {

// Fraction of an open interval kept clear at either end by the first
// boundary-hugging samples.
constexpr double kEdge = 1.0 / 64.0;

// Free radial dimensions (no distance classes) are sampled around this
// centre; the scale is irrelevant because every calculus here is scale
// invariant, only ratios between triangle legs matter.
constexpr double kFreeCentre = 1.0;

class Sampler {
 public:
  Sampler(const SamplingPlan& plan, Granularity m)
      : fractions_(open_fractions(plan)), cap_(plan.unbounded_cap), m_(m) {
    const DistanceClassifier classifier(m);
    unit_.assign(classifier.unit_boundaries().begin(),
                 classifier.unit_boundaries().end());
  }

  /// Angles (relative to the reference direction) realizing `sector`.
  std::vector<double> sector_angles(int sector) const {
    const double step = kPi / m_.value();
    if (sector % 2 == 0) return {(sector / 2) * step};
    const double lo = ((sector - 1) / 2) * step;
    std::vector<double> out;
    for (double f : fractions_) out.push_back(lo + f * step);
    return out;
  }

  std::vector<double> bounded(double lo, double hi) const {
    std::vector<double> out;
    for (double f : fractions_) out.push_back(lo * std::pow(hi / lo, f));
    return out;
  }

  std::vector<double> above(double b) const {
    std::vector<double> out;
    for (double f : fractions_) out.push_back(b * std::pow(cap_, f));
    out.push_back(4.0 * cap_ * b);
    return out;
  }

  std::vector<double> below(double b) const {
    std::vector<double> out;
    for (double f : fractions_) out.push_back(b / std::pow(cap_, f));
    out.push_back(b / (4.0 * cap_));
    return out;
  }

  std::vector<double> free(double centre) const {
    std::vector<double> out;
    for (double f : fractions_) {
      out.push_back(centre * std::pow(cap_, 2.0 * f - 1.0));
    }
    out.push_back(4.0 * cap_ * centre);
    out.push_back(centre / (4.0 * cap_));
    return out;
  }

  /// Distances d with classify(d, elevation) == c.
  std::vector<double> distances_in_class(int c, double elevation) const {
    const int mv = m_.value();
    if (mv == 1) return free(elevation);
    if (c % 2 == 1) return {elevation * unit(c / 2)};
    const int n = c / 2;
    if (n == 0) return below(elevation * unit(0));
    if (n == mv - 1) return above(elevation * unit(mv - 2));
    return bounded(elevation * unit(n - 1), elevation * unit(n));
  }

  /// Elevations e with classify(d, e) == c.
  std::vector<double> elevations_for_class(int c, double d) const {
    const int mv = m_.value();
    if (mv == 1) return free(d);
    if (c % 2 == 1) return {d / unit(c / 2)};
    const int n = c / 2;
    if (n == 0) return above(d / unit(0));
    if (n == mv - 1) return below(d / unit(mv - 2));
    return bounded(d / unit(n), d / unit(n - 1));
  }

 private:
  double unit(int u) const { return unit_[static_cast<std::size_t>(u)]; }

  std::vector<double> fractions_;
  double cap_;
  Granularity m_;
  std::vector<double> unit_;
};

const EOPoint kOrigin(Point(0.0, 0.0), 0.0, 1.0);

EOPoint place(double bearing_angle, double d, double heading, double elevation) {
  return EOPoint(Point(d * std::cos(bearing_angle), d * std::sin(bearing_angle)),
                 heading, elevation);
}

void append_oriented(std::vector<Configuration>& out, const Sampler& sampler,
                     int i, int j, const std::vector<double>& dists,
                     const auto& elevations_for) {
  for (double theta : sampler.sector_angles(i)) {
    for (double alpha : sampler.sector_angles(j)) {
      // The first point lies at angle alpha from the second heading.
      const double heading = theta + kPi - alpha;
      for (double d : dists) {
        for (double e : elevations_for(d)) {
          out.push_back({kOrigin, place(theta, d, heading, e)});
        }
      }
    }
  }
}

std::vector<Configuration> opra_reps(const OpraRelation& r,
                                     const Sampler& sampler) {
  std::vector<Configuration> out;
  if (r.kind == RelationKind::SamePosition) {
    for (double h : sampler.sector_angles(r.s)) {
      out.push_back({kOrigin, EOPoint(Point(0.0, 0.0), h, 1.0)});
    }
    return out;
  }
  append_oriented(out, sampler, r.i, r.j, sampler.free(kFreeCentre),
                  [](double) { return std::vector<double>{1.0}; });
  return out;
}

std::vector<Configuration> eopra_reps(const EopraRelation& r,
                                      const Sampler& sampler) {
  std::vector<Configuration> out;
  if (r.kind == RelationKind::SamePosition) {
    for (double h : sampler.sector_angles(r.s)) {
      for (double e : sampler.free(1.0)) {
        out.push_back({kOrigin, EOPoint(Point(0.0, 0.0), h, e)});
      }
    }
    return out;
  }
  append_oriented(out, sampler, r.i, r.j, sampler.distances_in_class(r.k, 1.0),
                  [&](double d) { return sampler.elevations_for_class(r.l, d); });
  return out;
}

std::vector<Configuration> star_reps(const StarRelation& r,
                                     const Sampler& sampler) {
  std::vector<Configuration> out;
  if (r.kind == RelationKind::SamePosition) {
    if (!r.elevated) return {{kOrigin, kOrigin}};
    for (double e : sampler.free(1.0)) {
      out.push_back({kOrigin, EOPoint(Point(0.0, 0.0), 0.0, e)});
    }
    return out;
  }
  for (double theta : sampler.sector_angles(r.d)) {
    if (!r.elevated) {
      for (double d : sampler.free(kFreeCentre)) {
        out.push_back({kOrigin, place(theta, d, 0.0, 1.0)});
      }
      continue;
    }
    for (double d : sampler.distances_in_class(r.k, 1.0)) {
      for (double e : sampler.elevations_for_class(r.l, d)) {
        out.push_back({kOrigin, place(theta, d, 0.0, e)});
      }
    }
  }
  return out;
}

void check_generation_support(const Calculus& calculus) {
  if ((calculus.id() == CalculusId::Star || calculus.id() == CalculusId::Estar) &&
      !calculus.frame().is_default()) {
    throw UnsupportedConfiguration(
        "composition tables need the equally spaced star frame");
  }
  const std::size_t n = calculus.size();
  if (n > RelationSet::kMaxUniverse ||
      n * n * words_for(n) * sizeof(std::uint64_t) > kMaxTableBytes) {
    throw UnsupportedConfiguration(
        "composition table for " + std::string(calculus_name(calculus.id())) +
        " m=" + std::to_string(calculus.granularity().value()) +
        " exceeds the table size limit");
  }
}

std::vector<std::vector<Configuration>> all_representatives(
    const Calculus& calculus, const SamplingPlan& plan) {
  std::vector<std::vector<Configuration>> reps(calculus.size());
  for (std::size_t r = 0; r < calculus.size(); ++r) {
    reps[r] = representatives(calculus, static_cast<RelationIndex>(r), plan);
  }
  return reps;
}

// Second leg of a triangle expressed in the frame of its first point, which
// representatives() normalize to the origin.
struct Leg {
  double x, y, heading, elevation;
};

// Frame of the shared middle point: the similarity mapping the normalized
// origin onto it.
struct Anchor {
  double x, y, cos_r, sin_r, rotation, scale;
};

void set_bit(std::span<std::uint64_t> words, RelationIndex t) {
  words[t / 64] |= std::uint64_t{1} << (t % 64);
}

TableMeta meta_for(const SamplingPlan& plan, const TolerancePolicy& tol) {
  TableMeta meta;
  meta.density = plan.density;
  meta.seed = plan.seed;
  meta.unbounded_cap = plan.unbounded_cap;
  meta.tolerance = tol;
  return meta;
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

void check_trials(std::uint64_t trials) {
  if (trials < 1) throw InvalidArgument("verification needs at least one trial");
}

std::optional<Violation> run_trial(const CompositionTable& table,
                                   std::uint64_t seed, std::uint64_t trial) {
  const Calculus& calculus = table.calculus();
  const auto [a, b, c] = verification_triple(seed, trial);
  const RelationIndex ab = calculus.relate(a, b);
  const RelationIndex bc = calculus.relate(b, c);
  const RelationIndex ac = calculus.relate(a, c);
  if (table.entry_contains(ab, bc, ac)) return std::nullopt;
  return Violation{trial, a, b, c, ab, bc, ac};
}

}  // namespace

void SamplingPlan::validate() const {
  if (density < 1) throw InvalidArgument("sampling density must be >= 1");
  if (!std::isfinite(unbounded_cap) || unbounded_cap <= 1.0) {
    throw InvalidArgument("unbounded cap must be finite and > 1");
  }
}

std::vector<double> open_fractions(const SamplingPlan& plan) {
  plan.validate();
  std::vector<double> out = {0.5, kEdge, 1.0 - kEdge};
  std::mt19937_64 rng(plan.seed);
  while (static_cast<int>(out.size()) < plan.density) {
    // Raw engine output keeps the sequence identical across standard
    // library implementations.
    const double u = static_cast<double>(rng() >> 11) * 0x1p-53;
    out.push_back(kEdge + (1.0 - 2.0 * kEdge) * u);
  }
  out.resize(static_cast<std::size_t>(plan.density));
  return out;
}

std::vector<Configuration> representatives(const Calculus& calculus,
                                           RelationIndex r,
                                           const SamplingPlan& plan) {
  if (r >= calculus.size()) {
    throw InvalidArgument("relation index outside the calculus universe");
  }
  const Sampler sampler(plan, calculus.granularity());
  switch (calculus.id()) {
    case CalculusId::Opra: return opra_reps(calculus.opra(r), sampler);
    case CalculusId::Eopra: return eopra_reps(calculus.eopra(r), sampler);
    case CalculusId::Star:
    case CalculusId::Estar:
      if (!calculus.frame().is_default()) {
        throw UnsupportedConfiguration(
            "representatives need the equally spaced star frame");
      }
      return star_reps(calculus.star(r), sampler);
  }
  return {};
}

std::vector<Configuration> representatives(const OpraRelation& r,
                                           const SamplingPlan& plan) {
  return opra_reps(r, Sampler(plan, r.m));
}

std::vector<Configuration> representatives(const EopraRelation& r,
                                           const SamplingPlan& plan) {
  return eopra_reps(r, Sampler(plan, r.m));
}

std::vector<Configuration> representatives(const StarRelation& r,
                                           const SamplingPlan& plan) {
  return star_reps(r, Sampler(plan, r.m));
}

CompositionTable::CompositionTable(CalculusId id, Granularity m, TableMeta meta,
                                   std::vector<std::uint64_t> words)
    : id_(id), m_(m), meta_(meta), calculus_(id, m, meta.tolerance),
      size_(calculus_.size()), stride_(words_for(size_)),
      words_(std::move(words)) {
  if (words_.size() != size_ * size_ * stride_) {
    throw InvalidArgument("table storage does not match the calculus universe");
  }
  row_union_.assign(size_, RelationSet::empty(calculus_));
  column_union_.assign(size_, RelationSet::empty(calculus_));
  for (std::size_t r = 0; r < size_; ++r) {
    for (std::size_t s = 0; s < size_; ++s) {
      const auto w = entry_words(static_cast<RelationIndex>(r),
                                 static_cast<RelationIndex>(s));
      row_union_[r].unite_with_words(w);
      column_union_[s].unite_with_words(w);
    }
  }
}

std::span<const std::uint64_t> CompositionTable::entry_words(
    RelationIndex r, RelationIndex s) const {
  if (r >= size_ || s >= size_) {
    throw InvalidArgument("relation index outside the table");
  }
  return std::span<const std::uint64_t>(words_).subspan(
      (static_cast<std::size_t>(r) * size_ + s) * stride_, stride_);
}

RelationSet CompositionTable::entry(RelationIndex r, RelationIndex s) const {
  RelationSet out = RelationSet::empty(calculus_);
  out.unite_with_words(entry_words(r, s));
  return out;
}

bool CompositionTable::entry_contains(RelationIndex r, RelationIndex s,
                                      RelationIndex t) const {
  if (t >= size_) return false;
  return (entry_words(r, s)[t / 64] >> (t % 64)) & 1U;
}

CompositionTable sample_table(CalculusId id, Granularity m,
                              const SamplingPlan& plan,
                              const TolerancePolicy& tol) {
  plan.validate();
  const Calculus calculus(id, m, tol);
  check_generation_support(calculus);
  const auto reps = all_representatives(calculus, plan);
  const std::size_t n = calculus.size();
  const std::size_t stride = words_for(n);

  std::vector<std::vector<Anchor>> anchors(n);
  std::vector<std::vector<Leg>> legs(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (const Configuration& cfg : reps[r]) {
      const EOPoint& b = cfg.b;
      anchors[r].push_back({b.position().x(), b.position().y(),
                            std::cos(b.heading()), std::sin(b.heading()),
                            b.heading(), b.elevation()});
      legs[r].push_back({b.position().x(), b.position().y(), b.heading(),
                         b.elevation()});
    }
  }

  std::vector<std::uint64_t> words(n * n * stride, 0);
  // Rows are independent; each writes only its own slice of `words`.
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t row = 0; row < static_cast<std::ptrdiff_t>(n); ++row) {
    const auto r = static_cast<std::size_t>(row);
    for (std::size_t s = 0; s < n; ++s) {
      std::span<std::uint64_t> entry(words.data() + (r * n + s) * stride, stride);
      for (const Anchor& an : anchors[r]) {
        for (const Leg& leg : legs[s]) {
          const EOPoint c(
              Point(an.scale * (an.cos_r * leg.x - an.sin_r * leg.y) + an.x,
                    an.scale * (an.sin_r * leg.x + an.cos_r * leg.y) + an.y),
              leg.heading + an.rotation, leg.elevation * an.scale);
          set_bit(entry, calculus.relate(kOrigin, c));
        }
      }
    }
  }
  return CompositionTable(id, m, meta_for(plan, tol), std::move(words));
}

CompositionTable sample_table_serial(CalculusId id, Granularity m,
                                     const SamplingPlan& plan,
                                     const TolerancePolicy& tol) {
  plan.validate();
  const Calculus calculus(id, m, tol);
  check_generation_support(calculus);
  const auto reps = all_representatives(calculus, plan);
  const std::size_t n = calculus.size();
  const std::size_t stride = words_for(n);

  std::vector<std::uint64_t> words(n * n * stride, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      std::span<std::uint64_t> entry(words.data() + (r * n + s) * stride, stride);
      for (const Configuration& first : reps[r]) {
        const Similarity onto_b{first.b.heading(), first.b.position(),
                                first.b.elevation()};
        for (const Configuration& second : reps[s]) {
          set_bit(entry, calculus.relate(first.a, onto_b.apply(second.b)));
        }
      }
    }
  }
  return CompositionTable(id, m, meta_for(plan, tol), std::move(words));
}

CompositionTable compose_tablegen(CalculusId id, Granularity m,
                                  const SamplingPlan& plan,
                                  const TolerancePolicy& tol) {
  return symmetrize(sample_table(id, m, plan, tol));
}

CompositionTable compose_tablegen_serial(CalculusId id, Granularity m,
                                         const SamplingPlan& plan,
                                         const TolerancePolicy& tol) {
  return symmetrize(sample_table_serial(id, m, plan, tol));
}

RelationSet compose_lookup(const CompositionTable& table, const RelationSet& r,
                           const RelationSet& s) {
  const Calculus& calculus = table.calculus();
  if (!r.matches(calculus) || !s.matches(calculus)) {
    throw InvalidArgument("relation sets do not match the table's calculus");
  }
  RelationSet out = RelationSet::empty(calculus);
  if (r.is_empty() || s.is_empty()) return out;
  const auto rs = r.members();
  const auto ss = s.members();
  if (ss.size() == calculus.size()) {
    for (RelationIndex a : rs) out.unite_with(table.row_union(a));
    return out;
  }
  if (rs.size() == calculus.size()) {
    for (RelationIndex b : ss) out.unite_with(table.column_union(b));
    return out;
  }
  for (RelationIndex a : rs) {
    for (RelationIndex b : ss) out.unite_with_words(table.entry_words(a, b));
  }
  return out;
}

std::array<EOPoint, 3> verification_triple(std::uint64_t seed,
                                           std::uint64_t trial) {
  std::mt19937_64 rng = trial_rng(seed, trial);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  std::uniform_real_distribution<double> heading(0.0, kTwoPi);
  std::uniform_real_distribution<double> log_elevation(-1.0, 1.0);
  auto draw = [&] {
    const double x = coord(rng);
    const double y = coord(rng);
    const double h = heading(rng);
    const double e = std::pow(10.0, log_elevation(rng));
    return EOPoint(Point(x, y), h, e);
  };
  const EOPoint a = draw();
  const EOPoint b = draw();
  const EOPoint c = draw();
  return {a, b, c};
}

VerificationReport verify_table(const CompositionTable& table,
                                std::uint64_t trials, std::uint64_t seed) {
  check_trials(trials);
  VerificationReport report;
  report.trials = trials;
#pragma omp parallel
  {
    std::vector<Violation> local;
#pragma omp for schedule(static)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
      if (auto v = run_trial(table, seed, static_cast<std::uint64_t>(t))) {
        local.push_back(*v);
      }
    }
#pragma omp critical
    report.violations.insert(report.violations.end(), local.begin(), local.end());
  }
  std::sort(report.violations.begin(), report.violations.end(),
            [](const Violation& x, const Violation& y) { return x.trial < y.trial; });
  return report;
}

VerificationReport verify_table_serial(const CompositionTable& table,
                                       std::uint64_t trials,
                                       std::uint64_t seed) {
  check_trials(trials);
  VerificationReport report;
  report.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    if (auto v = run_trial(table, seed, t)) report.violations.push_back(*v);
  }
  return report;
}

DualityReport check_duality(const CompositionTable& table) {
  const Calculus& calculus = table.calculus();
  const auto n = static_cast<RelationIndex>(table.size());
  DualityReport report;
  for (RelationIndex r = 0; r < n; ++r) {
    for (RelationIndex s = 0; s < n; ++s) {
      const RelationIndex cr = calculus.converse(r);
      const RelationIndex cs = calculus.converse(s);
      for (RelationIndex t : table.entry(r, s).members()) {
        if (!table.entry_contains(cs, cr, calculus.converse(t))) {
          report.missing.push_back({r, s, t});
        }
      }
    }
  }
  return report;
}

bool converse_table_check(const CompositionTable& table) {
  return check_duality(table).ok();
}

CompositionTable symmetrize(const CompositionTable& table) {
  const Calculus& calculus = table.calculus();
  const std::size_t n = table.size();
  const std::size_t stride = words_for(n);
  std::vector<std::uint64_t> words(table.raw_words().begin(),
                                   table.raw_words().end());
  std::vector<RelationIndex> conv(n);
  for (std::size_t r = 0; r < n; ++r) {
    conv[r] = calculus.converse(static_cast<RelationIndex>(r));
  }
  bool changed = false;
  auto add = [&](RelationIndex r, RelationIndex s, RelationIndex t) {
    std::uint64_t& w =
        words[(static_cast<std::size_t>(r) * n + s) * stride + t / 64];
    const std::uint64_t bit = std::uint64_t{1} << (t % 64);
    if ((w & bit) == 0) {
      w |= bit;
      changed = true;
    }
  };
  // A fact t in entry(r, s) is a triangle A, B, C with r(A, B), s(B, C) and
  // t(A, C). Every relabeling of its corners is a fact about some entry; one
  // pass over the original facts closes the table because the relabelings
  // form a group.
  for (std::size_t ri = 0; ri < n; ++ri) {
    for (std::size_t si = 0; si < n; ++si) {
      const auto r = static_cast<RelationIndex>(ri);
      const auto s = static_cast<RelationIndex>(si);
      for (RelationIndex t : table.entry(r, s).members()) {
        add(conv[s], conv[r], conv[t]);  // C, B, A
        add(s, conv[t], conv[r]);        // B, C, A
        add(conv[t], r, conv[s]);        // C, A, B
        add(conv[r], t, s);              // B, A, C
        add(t, conv[s], r);              // A, C, B
      }
    }
  }
  TableMeta meta = table.meta();
  meta.symmetrized = meta.symmetrized || changed;
  return CompositionTable(table.calculus_id(), table.granularity(), meta,
                          std::move(words));
}

}  // namespace qsr
