#include "bagcheck/distributions.hpp"

#include "bagcheck/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace bagcheck {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_real(std::string_view field, std::string_view whole) {
  double value = 0.0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || field.empty()) {
    throw std::invalid_argument("bad number '" + std::string(field) + "' in distribution '" +
                                std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Distribution Distribution::gaussian(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("gaussian: sigma must be > 0");
  return Distribution(Gaussian{sigma});
}

Distribution Distribution::uniform(double lower, double upper) {
  if (!std::isfinite(lower) || !std::isfinite(upper) || !(upper > lower)) {
    throw std::invalid_argument("uniform: need finite a < b");
  }
  return Distribution(Uniform{lower, upper});
}

Distribution Distribution::rademacher() { return Distribution(Rademacher{}); }

Distribution Distribution::two_point_pair(double p, double a) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("twopoint: p must lie in [0, 1]");
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("twopoint: a must be > 0");
  return Distribution(TwoPointPair{p, a});
}

double Distribution::draw(Rng& rng) const {
  return std::visit(
      Overloaded{
          [&](const Gaussian& g) { return g.sigma * rng.normal(); },
          [&](const Uniform& u) { return u.lower + (u.upper - u.lower) * rng.uniform01(); },
          [&](const Rademacher&) { return (rng.next_u64() >> 63) != 0 ? 1.0 : -1.0; },
          [&](const TwoPointPair& t) {
            // Inverse CDF over atoms ordered -1, -sqrt(a), sqrt(a), 1.
            const double u = rng.uniform01();
            const double half_p = 0.5 * t.p;
            const double root = std::sqrt(t.a);
            if (u < half_p) return -1.0;
            if (u < 0.5) return -root;
            if (u < 1.0 - half_p) return root;
            return 1.0;
          },
      },
      family_);
}

Moments population_moments(const Distribution& dist) {
  return std::visit(
      Overloaded{
          [](const Gaussian& g) {
            const double s2 = g.sigma * g.sigma;
            return Moments::make(s2, 3.0 * s2 * s2);
          },
          [](const Uniform& u) {
            const double w2 = (u.upper - u.lower) * (u.upper - u.lower);
            return Moments::make(w2 / 12.0, w2 * w2 / 80.0);
          },
          [](const Rademacher&) { return Moments::make(1.0, 1.0); },
          [](const TwoPointPair& t) {
            const double q = 1.0 - t.p;
            return Moments::make(t.p + q * t.a, t.p + q * t.a * t.a);
          },
      },
      dist.family());
}

// Per-family closed forms; the generic expression cancels badly for Uniform.
double bagging_gap_constant(const Distribution& dist) {
  return std::visit(Overloaded{
                        [](const Gaussian& g) {
                          const double s2 = g.sigma * g.sigma;
                          return -3.0 * s2 * s2;
                        },
                        [](const Uniform& u) {
                          const double w2 = (u.upper - u.lower) * (u.upper - u.lower);
                          return -(w2 * w2) / 240.0;
                        },
                        [](const Rademacher&) { return 1.0; },
                        [](const TwoPointPair& t) {
                          const Moments m = population_moments(Distribution::two_point_pair(t.p, t.a));
                          return -2.0 * m.mu4 + 3.0 * m.mu2 * m.mu2;
                        },
                    },
                    dist.family());
}

Dataset sample(const Distribution& dist, std::size_t n, Seed seed) {
  Rng rng(seed);
  std::vector<double> values(n);
  for (auto& v : values) v = dist.draw(rng);
  return Dataset(std::move(values));
}

Distribution parse_distribution(std::string_view text) {
  const auto parts = split(text, ':');
  const std::string_view name = parts.front();
  if (name == "gaussian" && parts.size() <= 2) {
    return Distribution::gaussian(parts.size() == 2 ? parse_real(parts[1], text) : 1.0);
  }
  if (name == "uniform" && parts.size() == 3) {
    return Distribution::uniform(parse_real(parts[1], text), parse_real(parts[2], text));
  }
  if (name == "rademacher" && parts.size() == 1) return Distribution::rademacher();
  if (name == "twopoint" && parts.size() == 3) {
    double p = -1.0;
    double a = -1.0;
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const std::string_view field = parts[i];
      if (field.starts_with("p=")) {
        p = parse_real(field.substr(2), text);
      } else if (field.starts_with("a=")) {
        a = parse_real(field.substr(2), text);
      } else {
        throw std::invalid_argument("unknown twopoint field '" + std::string(field) + "'");
      }
    }
    return Distribution::two_point_pair(p, a);
  }
  throw std::invalid_argument("unknown distribution '" + std::string(text) + "'");
}

std::string to_string(const Distribution& dist) {
  return std::visit(
      Overloaded{
          [](const Gaussian& g) { return "gaussian:" + format_shortest(g.sigma); },
          [](const Uniform& u) { return "uniform:" + format_shortest(u.lower) + ":" + format_shortest(u.upper); },
          [](const Rademacher&) { return std::string("rademacher"); },
          [](const TwoPointPair& t) {
            return "twopoint:p=" + format_shortest(t.p) + ":a=" + format_shortest(t.a);
          },
      },
      dist.family());
}

}  // namespace bagcheck
