#include "ddt/scenario.hpp"

#include <algorithm>
#include <stdexcept>

#include "ddt/errors.hpp"
#include "ddt/objective.hpp"
#include "ddt/rng.hpp"

namespace ddt {
namespace {

using Tracks = std::vector<std::vector<Point>>;  // [particle][tau]

Point ipoint(std::int64_t x, std::int64_t y) { return Point{Rational(x), Rational(y)}; }

bool inside(const Point& p, std::int64_t box) {
  for (std::size_t c = 0; c < p.dim(); ++c) {
    if (p[c] < Rational(-box) || p[c] > Rational(box)) return false;
  }
  return true;
}

bool acceptable(const Tracks& tracks, const Scenario& s) {
  const std::size_t t = tracks.empty() ? 0 : tracks[0].size();
  for (std::size_t tau = 0; tau < t; ++tau) {
    for (std::size_t a = 0; a < tracks.size(); ++a) {
      if (!inside(tracks[a][tau], s.box)) return false;
      for (std::size_t b = a + 1; b < tracks.size(); ++b) {
        Point d = tracks[a][tau] - tracks[b][tau];
        Rational sep = max(d[0].abs(), d[1].abs());
        if (sep.is_zero() || sep < Rational(s.min_separation)) return false;
      }
    }
  }
  return true;
}

Point draw_point(Rng& rng, std::int64_t lo, std::int64_t hi) { return ipoint(rng.range(lo, hi), rng.range(lo, hi)); }

std::int64_t floor_div(std::int64_t a, std::int64_t b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }
std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// Velocity with |components| <= v keeping x + dt * vel inside the box for
// every dt in [before, after] (before <= 0 <= after). Zero always qualifies.
Point draw_velocity(Rng& rng, const Point& x, std::int64_t before, std::int64_t after, std::int64_t box,
                    std::int64_t v) {
  std::vector<Rational> out;
  for (std::size_t c = 0; c < 2; ++c) {
    const std::int64_t xc = x[c].floor().numerator().get_si();
    std::int64_t lo = -v, hi = v;
    if (after > 0) {
      lo = std::max(lo, ceil_div(-box - xc, after));
      hi = std::min(hi, floor_div(box - xc, after));
    }
    if (before < 0) {
      lo = std::max(lo, ceil_div(xc - box, -before));
      hi = std::min(hi, floor_div(xc + box, -before));
    }
    out.emplace_back(lo > hi ? 0 : rng.range(lo, hi));
  }
  return Point(std::move(out));
}

Tracks draw(Rng& rng, const Scenario& s, const AffineMap& field) {
  Tracks tracks(s.n);
  const std::int64_t v = s.max_speed;
  std::size_t j = 0;
  if (s.motion == MotionKind::kStraightLine) {
    const auto mid = static_cast<std::int64_t>(s.t / 2);
    for (std::size_t pair = 0; pair < s.crossing_pairs && j + 1 < s.n; ++pair, j += 2) {
      // Two tracks through nearby points at the middle frame.
      Point m = draw_point(rng, -s.box / 2, s.box / 2);
      const auto before = -mid, after = static_cast<std::int64_t>(s.t) - 1 - mid;
      Point va = draw_velocity(rng, m, before, after, s.box, v);
      Point vb = draw_velocity(rng, m, before, after, s.box, v);
      // Offset by exactly the separation along x so the pair stays legal.
      Point shift = ipoint(rng.coin() ? s.min_separation : -s.min_separation,
                           rng.range(-s.min_separation, s.min_separation));
      for (std::size_t tau = 0; tau < s.t; ++tau) {
        Rational dt(static_cast<std::int64_t>(tau) - mid);
        tracks[j].push_back(m + dt * va);
        tracks[j + 1].push_back(m + shift + dt * vb);
      }
    }
  }
  for (; j < s.n; ++j) {
    Point x0 = draw_point(rng, -s.box, s.box);
    switch (s.motion) {
      case MotionKind::kStatic:
        tracks[j].assign(s.t, x0);
        break;
      case MotionKind::kStraightLine: {
        Point vel = draw_velocity(rng, x0, 0, static_cast<std::int64_t>(s.t) - 1, s.box, v);
        for (std::size_t tau = 0; tau < s.t; ++tau) {
          tracks[j].push_back(x0 + Rational(static_cast<std::int64_t>(tau)) * vel);
        }
        break;
      }
      case MotionKind::kPolynomial: {
        std::vector<Point> coef{x0};
        for (unsigned d = 1; d <= s.degree; ++d) coef.push_back(draw_point(rng, -v, v));
        for (std::size_t tau = 0; tau < s.t; ++tau) {
          Rational tt(static_cast<std::int64_t>(tau));
          Point p = coef.back();
          for (std::size_t d = coef.size() - 1; d-- > 0;) p = coef[d] + tt * p;  // Horner
          tracks[j].push_back(p);
        }
        break;
      }
      case MotionKind::kAffineField: {
        Point p = x0;
        for (std::size_t tau = 0; tau < s.t; ++tau) {
          tracks[j].push_back(p);
          p = field.apply(p);
        }
        break;
      }
    }
  }
  return tracks;
}

Tracks explicit_tracks(const Scenario& s) {
  if (s.velocities.size() != s.starts.size()) throw InputError("need one velocity per start");
  if (!s.offsets.empty() && s.offsets.size() != s.starts.size()) throw InputError("need one offset list per start");
  Tracks tracks(s.starts.size());
  for (std::size_t j = 0; j < s.starts.size(); ++j) {
    for (std::size_t tau = 0; tau < s.t; ++tau) {
      Point p = s.starts[j] + Rational(static_cast<std::int64_t>(tau)) * s.velocities[j];
      if (!s.offsets.empty()) {
        if (s.offsets[j].size() != s.t) throw InputError("need one offset per frame");
        p += s.offsets[j][tau];
      }
      tracks[j].push_back(std::move(p));
    }
  }
  return tracks;
}

}  // namespace

const char* to_string(MotionKind m) {
  switch (m) {
    case MotionKind::kStatic:
      return "static";
    case MotionKind::kStraightLine:
      return "straight";
    case MotionKind::kPolynomial:
      return "polynomial";
    case MotionKind::kAffineField:
      return "affine";
  }
  return "static";
}

MotionKind parse_motion_kind(const std::string& text) {
  for (auto m : {MotionKind::kStatic, MotionKind::kStraightLine, MotionKind::kPolynomial,
                 MotionKind::kAffineField}) {
    if (text == to_string(m)) return m;
  }
  throw InputError("unknown motion '" + text + "' (expected static, straight, polynomial or affine)");
}

GeneratedScenario generate(const Scenario& s) {
  if (s.t == 0) throw InputError("scenario needs at least one frame");
  std::vector<LatticeDirection> dirs = s.directions;
  if (dirs.empty()) {
    std::int64_t e0[2] = {1, 0}, e1[2] = {0, 1};
    dirs = {LatticeDirection::from_integers(e0), LatticeDirection::from_integers(e1)};
  }
  AffineMap field;
  field.matrix = {{Rational(1), Rational(-1)}, {Rational(1), Rational(1)}};
  field.translation = ipoint(0, 0);
  if (s.field) field = *s.field;

  Tracks tracks;
  if (!s.starts.empty()) {
    tracks = explicit_tracks(s);
  } else {
    if (s.box < 0 || s.min_separation < 1) throw InputError("box must be >= 0 and separation >= 1");
    // Separation-s cells of the box bound the number of particles.
    const std::int64_t per_axis = (2 * s.box) / s.min_separation + 1;
    if (static_cast<double>(s.n) > static_cast<double>(per_axis) * static_cast<double>(per_axis)) {
      throw InputError("box cannot hold " + std::to_string(s.n) + " separated particles");
    }
    Rng rng(s.seed);
    std::size_t attempt = 0;
    for (; attempt < s.max_attempts; ++attempt) {
      tracks = draw(rng, s, field);
      if (acceptable(tracks, s)) break;
    }
    if (attempt == s.max_attempts) {
      throw InputError("no draw stayed inside the box within " + std::to_string(s.max_attempts) +
                       " attempts");
    }
  }

  std::vector<PointSet> frames;
  for (std::size_t tau = 0; tau < s.t; ++tau) {
    std::vector<Point> pts;
    for (const auto& tr : tracks) pts.push_back(tr[tau]);
    frames.emplace_back(pts);
    if (frames.back().size() != tracks.size()) throw InputError("particles collide in a frame");
  }
  GeneratedScenario out;
  out.instance = TomographyInstance::from_frames(frames, dirs, false);
  if (!s.known_frames.empty()) {
    out.instance.known.assign(s.t, std::nullopt);
    for (std::size_t tau : s.known_frames) {
      if (tau >= s.t) throw InputError("known frame " + std::to_string(tau + 1) + " out of range");
      out.instance.known[tau] = frames[tau];
    }
  }
  if (s.motion == MotionKind::kAffineField && s.starts.empty()) {
    out.instance.displacement = DisplacementField{{field}, {}};
  }
  out.truth.frames = frames;
  for (const auto& tr : tracks) {
    std::vector<std::size_t> idx;
    for (std::size_t tau = 0; tau < s.t; ++tau) idx.push_back(frames[tau].index_of(tr[tau]));
    out.truth.tracks.push_back(std::move(idx));
  }
  out.truth.canonicalize();
  for (std::size_t tau = 0; tau < s.t; ++tau) {
    if (xray(out.truth.frames[tau], dirs[0], 0) != out.instance.frames[tau].first ||
        xray(out.truth.frames[tau], dirs[1], 1) != out.instance.frames[tau].second) {
      throw std::logic_error("simulator X-rays disagree with the truth");
    }
  }
  out.instance.validate();
  auto obj = evaluate_objective(out.instance, out.truth);
  if (obj) out.truth.objective = *obj;
  return out;
}

}  // namespace ddt
