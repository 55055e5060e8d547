#include "sfcusp/runconfig.hpp"

#include <json.hpp>

namespace sfcusp {

std::string RunConfig::to_json_string() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["k"] = k;
    j["N"] = N;
    j["form"] = form;
    j["form2"] = form2;
    j["data_path"] = data_path;
    j["beta"] = beta;
    j["quad_tol"] = quad_tol;
    j["x_min"] = x_min;
    j["x_max"] = x_max;
    j["x_points"] = x_points;
    j["P"] = P;
    j["contour_T"] = contour_T;
    j["sigma0"] = sigma0;
    j["x"] = x;
    j["eps"] = eps;
    j["a0"] = a0;
    j["search_limit"] = search_limit;
    j["prec"] = prec;
    j["tolerance"] = tolerance;
    j["out_path"] = out_path;
    j["format"] = format;
    j["seed"] = seed;
    j["threads"] = threads;
    return j.dump();
}

std::string RunConfig::hash() const {
    const std::string s = to_json_string();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace sfcusp
