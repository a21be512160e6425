#include "qrep/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace qrep::presets {

namespace {

rates::RepeaterConfig base() {
    rates::RepeaterConfig c;
    c.nbar = 100.0;
    c.g_tau = 4.0;
    c.eta = 1.0;
    c.eps = 0.001;
    return c;
}

}  // namespace

rates::RepeaterConfig fig6a_config(int n_links) {
    rates::RepeaterConfig c = base();
    c.n_links = n_links;
    c.L0_km = 0.3;
    c.N_rounds = 1;
    return c;
}

rates::RepeaterConfig fig5_l105_config() {
    rates::RepeaterConfig c = base();
    c.n_links = 30;
    c.L0_km = 3.5;
    c.N_rounds = 3;
    return c;
}

rates::RepeaterConfig fig6b_config(double total_km) {
    rates::RepeaterConfig c = base();
    c.super_link = true;
    c.inner_n_links = 60;
    c.inner_L0_km = 0.3;
    c.inner_N_rounds = 1;
    c.N_rounds = 1;
    const double elem = c.inner_n_links * c.inner_L0_km;
    c.n_links = std::max(2, static_cast<int>(std::ceil(total_km / elem)));
    return c;
}

bool is_figure_preset(const std::string& name) {
    return name == "fig3" || name == "fig4" || name == "fig5" || name == "fig6a" ||
           name == "fig6b";
}

std::vector<RatePoint> figure_preset(const std::string& name) {
    std::vector<RatePoint> out;
    if (name == "fig3") {
        for (double eta : {1.0, 0.8})
            for (int N = 1; N <= 4; ++N)
                for (double L0 = 0.25; L0 <= 8.0 + 1e-9; L0 += 0.25) {
                    rates::RepeaterConfig c = base();
                    c.n_links = 1;
                    c.L0_km = L0;
                    c.N_rounds = N;
                    c.eta = eta;
                    out.push_back({c, L0});
                }
        return out;
    }
    if (name == "fig4") {
        for (int N : {2, 4})
            for (int n = 2; n <= 40; ++n) {
                rates::RepeaterConfig c = base();
                c.n_links = n;
                c.L0_km = 3.5;
                c.N_rounds = N;
                out.push_back({c, n * 3.5});
            }
        return out;
    }
    if (name == "fig5") {
        for (double L0 : {3.5, 7.0})
            for (int n = 2; n <= 40; ++n) {
                rates::RepeaterConfig c = base();
                c.n_links = n;
                c.L0_km = L0;
                c.N_rounds = 3;
                out.push_back({c, n * L0});
            }
        return out;
    }
    if (name == "fig6a") {
        for (int n = 2; n <= 60; ++n) {
            out.push_back({fig6a_config(n), n * 0.3});
        }
        return out;
    }
    if (name == "fig6b") {
        for (int n = 2; n <= 50; ++n) {
            rates::RepeaterConfig c = fig6b_config(n * 18.0);
            c.n_links = n;
            out.push_back({c, n * 18.0});
        }
        return out;
    }
    throw std::invalid_argument("unknown figure preset: " + name);
}

}  // namespace qrep::presets
