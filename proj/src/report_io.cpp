#include "hessk/report_io.hpp"

#include <charconv>

namespace hessk {

std::string repr(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace verify {

nlohmann::ordered_json ledger_to_json(const ConstantsLedger& led) {
    nlohmann::ordered_json j;
    j["n"] = led.n;
    j["k"] = led.k;
    j["delta"] = led.delta;
    j["gamma_k"] = led.gamma_k;
    j["c4"] = led.c4;
    j["c6"] = led.c6;
    j["c7"] = led.c7;
    j["c8"] = led.c8;
    j["c9"] = led.c9;
    j["c12"] = led.c12;
    j["mu_k"] = led.mu_k;
    j["gamma_k_uniform"] = led.gamma_k_uniform;
    j["c10"] = led.c10;
    j["c11"] = led.c11;
    j["delta0"] = led.delta0;
    j["delta1"] = led.delta1;
    j["d"] = led.d;
    return j;
}

nlohmann::ordered_json report_to_json(const VerificationReport& rep, bool include_wall) {
    nlohmann::ordered_json j;
    j["suite"] = rep.suite;
    nlohmann::ordered_json params;
    params["n"] = rep.n;
    params["k"] = rep.k;
    params["delta"] = rep.delta;
    params["mu"] = rep.mu;
    params["gamma_k"] = rep.gamma_k;
    j["params"] = std::move(params);
    j["ledger"] = ledger_to_json(rep.ledger);
    j["samples"] = rep.samples;
    j["violations"] = rep.violations;
    j["worst_margin"] = rep.worst_margin;
    j["seed"] = rep.seed;
    j["wall_ms"] = include_wall ? rep.wall_ms : 0.0;
    return j;
}

std::string report_csv_header() {
    return "suite,n,k,delta,mu,gamma_k,samples,violations,worst_margin,seed,wall_ms,"
           "c4,c6,c7,c8,c9,c12,mu_k,gamma_k_uniform,c10,c11,delta0,delta1,d";
}

std::string report_csv_row(const VerificationReport& rep, bool include_wall) {
    const ConstantsLedger& led = rep.ledger;
    std::string row = rep.suite;
    const auto add = [&row](const std::string& s) {
        row += ',';
        row += s;
    };
    add(std::to_string(rep.n));
    add(std::to_string(rep.k));
    add(repr(rep.delta));
    add(repr(rep.mu));
    add(repr(rep.gamma_k));
    add(std::to_string(rep.samples));
    add(std::to_string(rep.violations));
    add(repr(rep.worst_margin));
    add(std::to_string(rep.seed));
    add(repr(include_wall ? rep.wall_ms : 0.0));
    add(repr(led.c4));
    add(repr(led.c6));
    add(repr(led.c7));
    add(repr(led.c8));
    add(repr(led.c9));
    add(repr(led.c12));
    add(repr(led.mu_k));
    add(repr(led.gamma_k_uniform));
    add(repr(led.c10));
    add(repr(led.c11));
    add(repr(led.delta0));
    add(repr(led.delta1));
    add(repr(led.d));
    return row;
}

} // namespace verify
} // namespace hessk
