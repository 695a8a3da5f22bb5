#include "harqee/channel_sim.hpp"

#include "harqee/detail/parallel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace harqee {

namespace {

// h_l = sigma_l (sqrt(1 - rho^(2(l-1))) w_l + rho^(l-1) w_0) with w ~ CN(0, 1).
class ChannelSampler {
public:
    explicit ChannelSampler(const ChannelSpec& spec)
        : rounds_(spec.rounds)
    {
        spec.validate_for_simulation();
        for (int l = 1; l <= rounds_; ++l) {
            const double sigma = std::sqrt(spec.sigma2[static_cast<std::size_t>(l - 1)]);
            const double shared = std::pow(spec.rho, l - 1);
            const double own = std::sqrt(std::max(0.0, 1.0 - shared * shared));
            own_.push_back(sigma * own);
            shared_.push_back(sigma * shared);
        }
    }

    int rounds() const { return rounds_; }

    static std::mt19937_64 block_stream(std::uint64_t seed, std::uint64_t block)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
        return std::mt19937_64(seq);
    }

    // Box-Muller draw of a unit circularly-symmetric complex Gaussian.
    static std::complex<double> unit_gaussian(std::mt19937_64& gen)
    {
        constexpr double kScale = 0x1.0p-53;
        const double u1 = 1.0 - static_cast<double>(gen() >> 11) * kScale;  // (0, 1]
        const double u2 = static_cast<double>(gen() >> 11) * kScale;        // [0, 1)
        const double radius = std::sqrt(-std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

    // Writes h_1..h_L; consumes L + 1 Gaussians regardless of rho.
    void draw(std::mt19937_64& gen, std::complex<double>* out) const
    {
        const std::complex<double> common = unit_gaussian(gen);
        for (int l = 0; l < rounds_; ++l) {
            const std::complex<double> own = unit_gaussian(gen);
            out[l] = own_[static_cast<std::size_t>(l)] * own + shared_[static_cast<std::size_t>(l)] * common;
        }
    }

private:
    int rounds_;
    std::vector<double> own_;
    std::vector<double> shared_;
};

std::size_t block_count(std::uint64_t trials)
{
    return static_cast<std::size_t>((trials + kTrialsPerBlock - 1) / kTrialsPerBlock);
}

}  // namespace

std::vector<std::complex<double>> draw_complex_channels(const ChannelSpec& spec, std::uint64_t seed, std::size_t n)
{
    if (n == 0) throw std::domain_error("draw_channels: n must be >= 1");
    const ChannelSampler sampler(spec);
    const auto rounds = static_cast<std::size_t>(sampler.rounds());
    std::vector<std::complex<double>> out(n * rounds);
    detail::parallel_for(block_count(n), 0, [&](std::size_t b) {
        auto gen = ChannelSampler::block_stream(seed, b);
        const std::size_t end = std::min<std::size_t>(n, (b + 1) * kTrialsPerBlock);
        for (std::size_t t = b * kTrialsPerBlock; t < end; ++t) sampler.draw(gen, &out[t * rounds]);
    });
    return out;
}

GainMatrix draw_channels(const ChannelSpec& spec, std::uint64_t seed, std::size_t n)
{
    const auto h = draw_complex_channels(spec, seed, n);
    GainMatrix m{n, spec.rounds, std::vector<double>(h.size())};
    for (std::size_t i = 0; i < h.size(); ++i) m.values[i] = std::norm(h[i]);
    return m;
}

MonteCarloReport estimate_outage(Scheme scheme, const ChannelSpec& spec, const PowerLadder& ladder, double rate,
                                 std::uint64_t seed, std::uint64_t trials, unsigned workers)
{
    if (trials == 0) throw std::domain_error("estimate_outage: trials must be >= 1");
    if (!(rate > 0.0)) throw std::domain_error("estimate_outage: rate must be > 0");
    const ChannelSampler sampler(spec);
    const int rounds = sampler.rounds();
    if (ladder.rounds() != rounds) throw std::invalid_argument("estimate_outage: ladder length must equal L");
    for (double p : ladder.powers)
        if (!(p >= 0.0)) throw std::invalid_argument("estimate_outage: powers must be >= 0");

    const double snr_threshold = std::expm1(rate * std::numbers::ln2);  // 2^R - 1
    const std::size_t blocks = block_count(trials);
    std::vector<std::vector<std::uint64_t>> per_block(blocks);

    detail::parallel_for(blocks, workers, [&](std::size_t b) {
        auto gen = ChannelSampler::block_stream(seed, b);
        std::vector<std::complex<double>> h(static_cast<std::size_t>(rounds));
        std::vector<std::uint64_t> fails(static_cast<std::size_t>(rounds), 0);
        const std::uint64_t end = std::min<std::uint64_t>(trials, (b + 1) * kTrialsPerBlock);
        for (std::uint64_t t = b * kTrialsPerBlock; t < end; ++t) {
            sampler.draw(gen, h.data());
            double acc = 0.0;
            for (int l = 0; l < rounds; ++l) {
                const double snr = ladder.powers[static_cast<std::size_t>(l)] * std::norm(h[static_cast<std::size_t>(l)]);
                bool outage = false;
                switch (scheme) {
                case Scheme::TypeI:
                    acc = std::max(acc, snr);
                    outage = acc <= snr_threshold;
                    break;
                case Scheme::CC:
                    acc += snr;
                    outage = acc <= snr_threshold;
                    break;
                case Scheme::IR:
                    acc += std::log1p(snr) / std::numbers::ln2;
                    outage = acc <= rate;
                    break;
                }
                if (!outage) break;
                ++fails[static_cast<std::size_t>(l)];
            }
        }
        per_block[b] = std::move(fails);
    });

    MonteCarloReport report;
    report.scheme = scheme;
    report.rate = rate;
    report.trials = trials;
    report.seed = seed;
    report.failures.assign(static_cast<std::size_t>(rounds), 0);
    for (const auto& fails : per_block)
        for (int l = 0; l < rounds; ++l) report.failures[static_cast<std::size_t>(l)] += fails[static_cast<std::size_t>(l)];

    const double n = static_cast<double>(trials);
    double previous = 1.0;  // p_out,0
    double expected_rounds = 0.0;
    for (int l = 0; l < rounds; ++l) {
        const auto fails = report.failures[static_cast<std::size_t>(l)];
        const double p = static_cast<double>(fails) / n;
        report.outage.push_back(p);
        report.outage_halfwidth.push_back(1.96 * std::sqrt(p * (1.0 - p) / n));
        report.unreliable.push_back(fails < 10);
        report.avg_power += previous * ladder.powers[static_cast<std::size_t>(l)];
        expected_rounds += previous;
        previous = p;
    }
    report.goodput = rate * (1.0 - report.outage.back());
    report.energy_efficiency = report.avg_power > 0.0 ? report.goodput / report.avg_power : 0.0;
    report.spectral_efficiency = report.goodput / expected_rounds;
    return report;
}

MonteCarloReport estimate_ee(Scheme scheme, const ChannelSpec& spec, const PowerLadder& ladder, double rate,
                             std::uint64_t seed, std::uint64_t trials, unsigned workers)
{
    return estimate_outage(scheme, spec, ladder, rate, seed, trials, workers);
}

}  // namespace harqee
