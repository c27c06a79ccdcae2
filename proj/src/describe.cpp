#include "lss/describe.hpp"

#include <cstdio>
#include <sstream>

namespace lss {

namespace {
std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}
} // namespace

std::string describe(const KernelSpec& spec) {
    std::ostringstream os;
    os << (spec.family == KernelFamily::gamma ? "gamma" : "power") << "(c0=" << num(spec.c0)
       << ",alpha=" << num(spec.alpha);
    if (spec.family == KernelFamily::gamma) os << ",decay=" << num(spec.decay);
    os << ",g0=" << (spec.g0_mode == G0Mode::zero ? "zero" : "equal_g") << ")";
    return os.str();
}

std::string describe(const DriverSpec& spec) {
    std::ostringstream os;
    if (const auto* st = std::get_if<StableDriver>(&spec)) {
        os << "stable(beta=" << num(st->beta) << ",scale=" << num(st->gamma_scale) << ")";
        return os.str();
    }
    const auto& cp = std::get<CompoundPoissonDriver>(spec);
    os << "cp(rate=" << num(cp.rate) << ",";
    if (const auto* r = std::get_if<RademacherLaw>(&cp.law)) {
        os << "rademacher(size=" << num(r->size) << ")";
    } else if (const auto* p = std::get_if<TwoSidedParetoLaw>(&cp.law)) {
        os << "pareto(tail=" << num(p->tail_index) << ",min=" << num(p->min_size) << ")";
    } else {
        const auto& at = std::get<AtomsLaw>(cp.law);
        os << "atoms(";
        for (std::size_t i = 0; i < at.atoms.size(); ++i) {
            if (i) os << ";";
            os << num(at.atoms[i].first) << ":" << num(at.atoms[i].second);
        }
        os << ")";
    }
    os << ")";
    return os.str();
}

std::string describe(const SigmaSpec& spec) {
    std::ostringstream os;
    if (const auto* c = std::get_if<ConstantSigma>(&spec)) {
        os << "constant(" << num(c->value) << ")";
    } else if (const auto* d = std::get_if<DeterministicSigma>(&spec)) {
        os << d->shape << "(a=" << num(d->a) << ",b=" << num(d->b);
        if (d->shape == "cosine") os << ",w=" << num(d->w);
        os << ")";
    } else if (const auto* ou = std::get_if<OuSigma>(&spec)) {
        os << "ou(mean=" << num(ou->mean) << ",reversion=" << num(ou->reversion) << ",jumps="
           << describe(DriverSpec{ou->jumps}) << ")";
    } else {
        const auto& st = std::get<StepSigma>(spec);
        os << "step(";
        for (std::size_t i = 0; i < st.levels.size(); ++i) {
            if (i) os << ";" << num(st.times[i - 1]) << ";";
            os << num(st.levels[i]);
        }
        os << ")";
    }
    return os.str();
}

} // namespace lss
