#include "qsc/protocols.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace qsc {

namespace {

bool cavity(Mode m) { return m == Mode::Optical || m == Mode::Microwave; }

CMat basis_density(Mode m) {
    CMat rho(4);
    rho(static_cast<int>(m), static_cast<int>(m)) = 1.0;
    return rho;
}

} // namespace

void ProtocolSpec::validate() const {
    pulse.validate();
    rates.validate();
    if (!cavity(initial) || !cavity(target))
        throw std::invalid_argument("ProtocolSpec: initial and target must be cavity modes");
    if (initial == target)
        throw std::invalid_argument("ProtocolSpec: initial and target must differ");
    const bool forward = pulse.direction == Direction::ForwardA1toA2;
    if (forward != (initial == Mode::Optical))
        throw std::invalid_argument(
            "ProtocolSpec: pulse direction inconsistent with initial/target modes");
    if (samples < 4000)
        throw std::invalid_argument("ProtocolSpec: need >= 4000 samples per tau");
}

Hamiltonian assemble_protocol(const ProtocolSpec& spec) {
    spec.validate();
    if (spec.pulse.variant == Variant::SATD && spec.pulse.squeeze != 0.0)
        throw std::invalid_argument(
            "assemble_protocol: the squeeze parameter applies only to the dressed scheme");

    const PulseParams p = spec.pulse;
    switch (p.variant) {
        case Variant::Adiabatic:
            return [p](double t) {
                const CouplingSample s = base_couplings(p, t);
                return interaction_hamiltonian(s.g1, s.g2);
            };
        case Variant::SATD:
            return [p](double t) {
                const CouplingSample s = base_couplings(p, t);
                CMat h = interaction_hamiltonian(s.g1, s.g2);
                h += satd_correction(p, t);
                return h;
            };
        case Variant::Dressed:
            return [p](double t) { return dressed_hamiltonian(p, t); };
    }
    throw std::invalid_argument("assemble_protocol: unknown variant");
}

Hamiltonian assemble_protocol_open(const ProtocolSpec& spec) {
    Hamiltonian closed = assemble_protocol(spec);
    return [closed = std::move(closed)](double t) { return embed_open(closed(t)); };
}

SimulationResult run_conversion(const ProtocolSpec& spec) {
    const Hamiltonian h = assemble_protocol_open(spec);
    const std::vector<double> grid = uniform_grid(0.0, spec.pulse.tau, spec.samples);

    const auto started = std::chrono::steady_clock::now();
    SimulationResult result;
    result.trajectory =
        integrate_density(h, basis_density(spec.initial), spec.rates, grid, spec.target);
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    result.final_fidelity = result.trajectory.fidelity.back();
    for (const Populations& p : result.trajectory.pops)
        result.peak_bm = std::max(result.peak_bm, p.bm);
    for (double t : grid) {
        const ModifiedCouplings m = modified_couplings(spec.pulse, t);
        result.peak_g1_mod = std::max(result.peak_g1_mod, std::abs(m.g1_mod));
        result.peak_g2_mod = std::max(result.peak_g2_mod, std::abs(m.g2_mod));
    }
    return result;
}

double max_intermediate_population(const SimulationResult& result) {
    double peak = 0.0;
    for (const Populations& p : result.trajectory.pops) peak = std::max(peak, p.bm);
    return peak;
}

double predicted_intermediate_population(const PulseParams& params, double t) {
    if (params.variant != Variant::Dressed)
        throw std::invalid_argument(
            "predicted_intermediate_population: defined for the dressed variant");
    const double mu = control_fields(params, t).mu;
    const double s = std::sin(mu);
    return s * s;
}

std::vector<SimulationResult> run_batch(const std::vector<ProtocolSpec>& specs, int workers) {
    std::vector<SimulationResult> results(specs.size());
    if (specs.empty()) return results;

    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, static_cast<int>(specs.size())));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= specs.size()) return;
            try {
                results[i] = run_conversion(specs[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return results;
}

std::vector<SimulationResult> sweep_squeeze(const ProtocolSpec& spec,
                                            const std::vector<double>& squeezes,
                                            int workers) {
    std::vector<ProtocolSpec> specs;
    specs.reserve(squeezes.size());
    for (double a : squeezes) {
        ProtocolSpec point = spec;
        point.pulse.squeeze = a;
        specs.push_back(point);
    }
    return run_batch(specs, workers);
}

} // namespace qsc
