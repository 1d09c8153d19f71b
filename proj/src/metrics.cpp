#include "ptasynth/metrics.hpp"

#include "ptasynth/error.hpp"

namespace ptasynth {

namespace {

void absorb(Integer& best, const Expression& e) {
    if (e.is_infinite()) return;
    if (!e.is_linear()) throw UnsupportedError("maxC/maxV are defined for linear expressions only");
    Integer c = abs(e.constant_term());
    if (c > best) best = c;
}

}  // namespace

Integer max_c(const Pta& pta) {
    Integer best = 0;
    for (const auto* a : pta.atoms()) absorb(best, a->rhs);
    return best;
}

Integer max_v(const SystemProperty& psi) {
    std::vector<AtomicConstraint> atoms;
    collect_atoms(psi.phi, atoms);
    Integer best = 0;
    for (const auto& a : atoms) absorb(best, a.rhs);
    return best;
}

Thresholds thresholds(const Pta& pta, const SystemProperty& psi) {
    Integer c = max_c(pta);
    Integer v = max_v(psi);
    Integer k = Integer(static_cast<unsigned long>(pta.transitions.size()));
    Thresholds t;
    t.s0 = 2 * k * (c > v ? c : v) + 1;
    t.s1 = 4 * t.s0;
    return t;
}

}  // namespace ptasynth
