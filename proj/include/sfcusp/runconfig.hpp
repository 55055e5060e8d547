#pragma once

#include <cstdint>
#include <string>

namespace sfcusp {

inline constexpr const char* kToolName = "sfcusp";
inline constexpr const char* kToolVersion = "0.1.0";

// Everything a run depends on.  Reports embed the serialized config plus its
// hash so artifacts are reproducible byte for byte.
struct RunConfig {
    std::string command;

    // form selection
    int k = 12;
    uint64_t N = 1;
    std::string form;     // delta | eigen:<k>[:<idx>] | eta:<N> | lift:<base>:<delta> | file:<path>
    std::string form2;    // second form for cross/oracle
    std::string data_path;

    // weight
    double beta = 1.0;
    double quad_tol = 1e-10;

    // analysis
    double x_min = 1e3;
    double x_max = 1e6;
    int x_points = 12;
    uint64_t P = 100000;
    double contour_T = 400.0;
    double sigma0 = 2.0;
    double x = 100.0;
    double eps = 0.01;
    double a0 = 1.0;
    uint64_t search_limit = 1000;
    uint64_t prec = 2000;
    double tolerance = 1e-8;

    // output
    std::string out_path;
    std::string format = "csv";   // csv | json | plotdata

    uint64_t seed = 0;
    int threads = 0;

    std::string to_json_string() const;   // canonical ordered serialization
    std::string hash() const;             // FNV-1a of the canonical form, hex
};

} // namespace sfcusp
