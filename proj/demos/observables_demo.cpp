// Minimal API tour: build the volume fixture, solve for Hamiltonian
// vector fields, compare the two brackets, and print the Lie 2-algebra
// data for one triple of observables.

#include "plectic/lie2.hpp"
#include "plectic/specfile.hpp"

#include <iostream>

using namespace plectic;

int main() {
    SampleConfig cfg;
    auto P = std::make_shared<const PlecticStructure>(make_volume_plectic(3, cfg));

    auto observable = [&](const std::string& literal) {
        auto F = parse_form_literal(literal, P->chart);
        auto r = hamiltonian_vector_field(*P, F, cfg);
        if (!is_hamiltonian(r)) throw std::runtime_error(literal + " is not Hamiltonian");
        return get_hamiltonian(r);
    };

    auto F = observable("x * dy");
    auto G = observable("y * dz");
    auto H = observable("z * dx");

    std::cout << "omega        = " << form_to_literal(P->omega) << "\n";
    std::cout << "F            = " << form_to_literal(F.F) << "\n";
    std::cout << "v_F          = ";
    for (const auto& [i, c] : F.v.components())
        std::cout << to_string(c) << " d/d" << P->chart.name(i) << " ";
    std::cout << "\n";

    auto hb = hemi_bracket(*P, F, G, cfg);
    auto sb = semi_bracket(*P, F, G, cfg);
    std::cout << "{F,G}_h      = " << form_to_literal(hb.F) << "\n";
    std::cout << "{F,G}_s      = " << form_to_literal(sb.F) << "\n";

    auto hemi = build_hemistrict(P, cfg);
    auto semi = build_semistrict(P, cfg);
    std::cout << "S_{F,G}      = " << to_string(hemi.alternator(F, G)) << "\n";
    std::cout << "J_s(F,G,H)   = " << to_string(semi.jacobiator(F, G, H)) << "\n";

    auto [fwd, bwd] = build_isomorphism(hemi, semi);
    std::cout << "Phi_{F,G}    = " << to_string(fwd.Phi(F, G)) << "\n";

    Lie2Battery battery = default_battery(*P, cfg);
    auto report = verify_coherence(semi, battery, cfg);
    std::cout << report.to_string();
    return report.passed() ? 0 : 1;
}
