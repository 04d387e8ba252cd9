#pragma once

#include <carnot/algebra.hpp>
#include <carnot/env_op.hpp>
#include <carnot/gbar.hpp>
#include <carnot/index_ops.hpp>
#include <carnot/osc.hpp>
#include <carnot/rockland.hpp>

#include <string>

#include "json.hpp"

namespace carnot_cli {

using ojson = nlohmann::ordered_json;

inline constexpr const char* kSchema = "carnot-report/1";

struct CmdResult {
  ojson report;
  int exit_code = 0;
};

// Emits the structured report on stdout (and to `out` when set) and a short
// human summary on stderr; returns the exit code.
int finish(const CmdResult& r, const std::string& out_path);

// shared parsing helpers
carnot::RVec parse_rvec(const std::string& text);
Eigen::VectorXd parse_dvec(const std::string& text);
std::vector<carnot::RVec> parse_points(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);
carnot::CQMat parse_cqmat_arg(const std::string& text);
std::vector<Eigen::MatrixXcd> load_matrix_list(const std::string& path);

carnot::AlgebraPtr load_algebra(const std::string& path);

// report -> json
ojson validation_json(const carnot::ValidationReport& rep, const carnot::GradedLieAlgebra* alg);
ojson verdict_json(const carnot::RocklandVerdict& v);
ojson gamma_json(const carnot::GammaCriterion& c);
ojson index_json(const carnot::IndexReport& r);
ojson vanerp_json(const carnot::VanErpReport& r);
ojson filtration_json(const carnot::FiltrationReport& r);

// subcommand handlers
CmdResult run_validate(const std::string& algebra_path);
CmdResult run_bch(const std::string& algebra_path, const std::string& x, const std::string& y);
CmdResult run_dilate(const std::string& algebra_path, const std::string& lambda,
                     const std::string& x);
CmdResult run_dnc(const std::string& algebra_path, const std::string& t);
CmdResult run_gbar_build(const std::string& algebra_path);
CmdResult run_gbar_flatten(const std::string& algebra_path, const std::string& ell,
                           const std::string& t);
CmdResult run_op_normalize(const std::string& op_path);
CmdResult run_op_multiply(const std::string& a_path, const std::string& b_path);
CmdResult run_op_adjoint(const std::string& op_path);
CmdResult run_op_sharp(const std::string& d1_path, const std::string& d2_path,
                       const std::string& gbar_of, const std::string& c, bool symmetric);
CmdResult run_op_example1(const std::string& algebra_path, int s);
CmdResult run_op_gamma(const std::string& algebra_path, const std::string& gamma);
CmdResult run_op_dirac(const std::string& algebra_path, const std::string& clifford,
                       int degree);
CmdResult run_rep_scan(const std::string& op_path, const std::string& cutoffs, double tol,
                       int sphere_points);
CmdResult run_rep_criterion(const std::string& algebra_path, const std::string& gamma);
CmdResult run_index_fredholm(const std::string& op_path, const std::string& gbar_of,
                             const std::string& ladder, double tol, int sign);
CmdResult run_index_sf(const std::string& f0_path, const std::string& f1_path, int steps);
CmdResult run_index_winding(const std::string& loop_path);
CmdResult run_index_vanerp(const std::string& g_path, const std::string& d1_path,
                           const std::string& d2_path, const std::string& c,
                           const std::string& ladder, const std::string& tails, double tol);
CmdResult run_osc_check(const std::string& fields_path, const std::string& points);
CmdResult run_osc_algebra(const std::string& fields_path, const std::string& point);
CmdResult run_pipeline(const std::string& config_path);

}  // namespace carnot_cli
