#include "laxlab/sampling.hpp"

#include <cmath>

#include "laxlab/errors.hpp"

namespace laxlab {

namespace {

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& s : s_) s = splitmix64(sm);
}

uint64_t Rng::next() {
    const uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform(double a, double b) {
    const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return a + (b - a) * u;
}

Rng Rng::fork(uint64_t salt) const {
    uint64_t mix = s_[0] ^ rotl(s_[3], 13) ^ (salt * 0x9e3779b97f4a7c15ULL);
    return Rng(mix);
}

PhasePoint sample_phase_point(Rng& rng, int n, double min_sep) {
    PhasePoint x;
    x.p.resize(n);
    x.q.resize(n);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        for (int i = 0; i < n; ++i) x.q[i] = rng.uniform(-0.45, 0.45);
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = i + 1; j < n; ++j)
                if (std::abs(x.q[i] - x.q[j]) <= min_sep) {
                    ok = false;
                    break;
                }
        if (ok) {
            for (int i = 0; i < n; ++i) x.p[i] = rng.uniform(-1.0, 1.0);
            return x;
        }
    }
    throw ValidityError("sample_phase_point: rejection sampling did not converge");
}

Complex sample_spectral(Rng& rng, const EllipticParams& par) {
    const double guard = 1e-6;
    for (int attempt = 0; attempt < 10000; ++attempt) {
        const Complex u(rng.uniform(0.1, 0.9), rng.uniform(0.0, 0.2));
        if (std::abs(sigma_fn(u, par.tau, par.eps)) < guard) continue;
        if (std::abs(theta_j(0, u, par)) < guard) continue;
        return u;
    }
    throw ValidityError("sample_spectral: rejection sampling did not converge");
}

}  // namespace laxlab
