#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nonlocal/kernels.hpp"

namespace nonlocal {

enum class StudyPath { BallBaseline, FixedN, GrowingN, SigmaTable, NormLimit, KGamma };

// Flat configuration mirrored one-to-one by the JSON config file.
struct StudyConfig {
    StudyPath path = StudyPath::BallBaseline;
    std::vector<double> delta_list = {0.125, 0.0625, 0.03125};
    int n_fixed = 8;          // FixedN
    double n_coeff = 1.0;     // GrowingN: n(delta) = ceil(n_coeff * delta^-n_exp), next even
    double n_exp = 0.5;
    std::vector<int> n_list;  // optional explicit side counts, one per delta row
    double beta = 1.5;        // h = 1 / ceil(delta^-beta)
    KernelFamily kernel = KernelFamily::Constant;
    double s = 0.0;           // singular exponent when kernel == Singular
    int quad_order = 16;
    double cg_tol = 1e-10;
    int refine = 4;
    double rotation = 0.0;
};

struct StudyRow {
    int k = 0;
    double delta = 0.0;
    int n = 0;            // 0 for the ball
    double h = 0.0;
    std::int64_t dof = 0;
    double l2_error = 0.0;  // path value: L2 error, moment deficit, energy deficit or kernel mass
    double rate = 0.0;      // log2(e_{k-1} / e_k), valid when has_rate
    bool has_rate = false;
};

struct StudyReport {
    StudyConfig config;
    std::vector<StudyRow> rows;
    double wall_seconds = 0.0;
};

// Runs one convergence path of the diagram (or a diagnostic sweep) over the
// configured horizon list. The problem paths solve the manufactured problem
//   u0 = x1^2 x2 + x2^2,  f = -2 (x2 + 1)
// with u0 prescribed on the interaction layer.
StudyReport run_study(const StudyConfig& cfg);

// CSV with header k,delta,n,h,dof,l2_error,rate; round-trip decimal formatting.
void write_csv(const StudyReport& report, const std::string& path);

StudyConfig config_from_json_file(const std::string& path);

const char* study_path_name(StudyPath path);
StudyPath study_path_from_name(const std::string& name);

// CLI entry point (subcommands sigma/apply/solve/study/norm-limit/kgamma).
// Returns 0 on success, 2 on argument errors, 1 on runtime errors.
int cli_main(const std::vector<std::string>& args);

}  // namespace nonlocal
