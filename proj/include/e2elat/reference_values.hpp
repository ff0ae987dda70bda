#pragma once

// Reference values, in milliseconds unless noted. Display only:
// nothing in the model reads these. NaN marks a '-' cell; the TN/CN
// instability cells are listed separately.

#include <limits>

#include "e2elat/scenario.hpp"

namespace e2elat::reference {

inline constexpr double na = std::numeric_limits<double>::quiet_NaN();

// Table V: UL+DL propagation and processing, per deployment.
inline constexpr double tn_propagation_ms[4] = {0.0, 0.03, 0.75, 0.75};
inline constexpr double tn_processing_ms[4] = {0.4, 0.8, 1.6, 1.6};

// Table VI: TN latency at lambda = 2080, [deployment][alpha index][mean, p90, p99.99],
// alphas {0.001, 0.01, 0.1}. MEC@CN and Centralized share a row.
inline constexpr double table6_alphas[3] = {0.001, 0.01, 0.1};
inline constexpr double table6[4][3][3] = {
    {{0.908, 1.571, 5.083}, {0.425, 0.458, 0.633}, {0.402, 0.410, 0.422}},
    {{1.856, 3.192, 10.279}, {0.881, 0.949, 1.304}, {0.835, 0.841, 0.875}},
    {{na, na, na}, {2.402, 2.471, 2.833}, {2.355, 2.361, 2.396}},
    {{na, na, na}, {2.402, 2.471, 2.833}, {2.355, 2.361, 2.396}},
};
/// Cells listed as "alpha not sufficient".
inline constexpr bool table6_unstable[4][3] = {
    {false, false, false}, {false, false, false}, {true, false, false}, {true, false, false}};

// Table VII: CN latency, [MEC | Centralized][alpha index][mean, p90, p99.99].
inline constexpr double table7[2][3][3] = {
    {{0.0016, 0.0008, 0.0008}, {0.0001, 0.00008, 0.00008}, {0.00001, 0.00001, 0.00001}},
    {{na, na, na}, {2.0006, 2.0006, 2.0007}, {2.0000, 2.0001, 2.0001}},
};

// Table VIII: peering [remote, local][mean, p90, p99.99].
inline constexpr double table8[2][3] = {{13.001, 29.867, 99.212}, {0.306, 0.431, 1.493}};

// Internet round trip.
inline constexpr double internet_p90 = 21.0;
inline constexpr double internet_p9999 = 43.0;
inline constexpr double internet_mean = 10.3;

// Table IX: AS latency [deployment][lambda 2080, 41600][mean, p90, p99.99].
// Centralized entries are ranges over 110..23 processors: {low, high}.
inline constexpr double table9_lambdas[2] = {2080, 41600};
inline constexpr double table9[3][2][3] = {
    {{0.0027, 0.039, 0.042}, {0.0031, 0.042, 0.046}},
    {{0.0048, 0.068, 0.073}, {0.0917, 0.128, 0.137}},
    {{1.320, 1.843, 1.980}, {2.640, 3.662, 3.955}},
};
inline constexpr double table9_centralized[2][3][2] = {
    {{0.035, 0.165}, {0.0482, 0.231}, {0.0517, 0.247}},
    {{0.689, 3.295}, {0.701, 4.633}, {0.750, 4.940}},
};
inline constexpr int table9_processors[4] = {2, 4, 4, 110};
inline constexpr int table9_processors_centralized_low = 23;

// Table X: minimum processors [lambda 2080, 41600][deployment].
inline constexpr int table10[2][4] = {{1, 1, 6, 4}, {1, 1, 212, 152}};

// AS percentiles at the slot-bound operating point.
inline constexpr double as_p90 = 0.6977;
inline constexpr double as_p9999 = 0.7499;

// Tables XI to XIV: E2E columns and [deployment][column][single, multi].
struct E2eColumn {
  double alpha;
  bool hloa;
  double lambda;
};
inline constexpr E2eColumn e2e_columns[9] = {
    {0.001, false, 2080}, {0.001, false, 8320}, {0.001, true, 2080},
    {0.001, true, 8320},  {0.01, false, 2080},  {0.01, false, 8320},
    {0.01, false, 31200}, {0.01, true, 2080},   {0.01, true, 8320},
};
inline constexpr double e2e[4][9][2] = {
    {{4.265, 4.696},
     {na, na},
     {8.603, 10.096},
     {na, na},
     {3.152, 3.582},
     {3.164, 3.595},
     {7.435, 7.866},
     {4.153, 5.646},
     {5.979, 7.473}},
    {{5.897, 6.327},
     {na, na},
     {13.80, 15.293},
     {na, na},
     {3.653, 4.083},
     {3.671, 4.102},
     {8.127, 8.558},
     {4.824, 6.317},
     {6.697, 8.190}},
    {{na, na},
     {na, na},
     {na, na},
     {na, na},
     {5.174, 5.604},
     {5.203, 5.634},
     {na, na},
     {6.353, 7.846},
     {8.227, 9.720}},
    {{na, na},
     {na, na},
     {na, na},
     {na, na},
     {28.17, 58.04},
     {28.19, 58.06},
     {na, na},
     {51.35, 150.57},
     {53.23, 152.44}},
};

// Mean-based E2E figures: {deployment, hloa, lambda, alpha, mno, mean}.
struct MeanE2e {
  Deployment deployment;
  bool hloa;
  double lambda;
  double alpha;
  MnoMode mno;
  double mean;
  double percentile;  ///< service percentile quoted beside it, NaN if none
};
inline constexpr MeanE2e mean_e2e[4] = {
    {Deployment::mec_m1, true, 2080, 0.001, MnoMode::single, 3.86, 13.80},
    {Deployment::mec_m1, true, 2080, 0.001, MnoMode::multi_local, 4.17, 15.293},
    {Deployment::mec_gnb, true, 2080, 0.001, MnoMode::multi_local, 3.22, 10.096},
    {Deployment::centralized, false, 8320, 0.01, MnoMode::multi_local, 17.0, 28.6},
};

// alpha_min figures: {deployment, hloa, lambda, mno, alpha_min}.
struct AlphaMinAnchor {
  Deployment deployment;
  bool hloa;
  double lambda;
  MnoMode mno;
  double alpha_min;
};
inline constexpr AlphaMinAnchor alpha_min_anchors[14] = {
    {Deployment::mec_gnb, false, 8320, MnoMode::single, 0.0019},
    {Deployment::mec_gnb, true, 8320, MnoMode::single, 0.0026},
    {Deployment::mec_gnb, true, 8320, MnoMode::multi_local, 0.0029},
    {Deployment::mec_m1, true, 2080, MnoMode::single, 0.0014},
    {Deployment::mec_m1, true, 2080, MnoMode::multi_local, 0.0015},
    {Deployment::mec_m1, true, 8320, MnoMode::single, 0.0033},
    {Deployment::mec_m1, true, 8320, MnoMode::multi_local, 0.004},
    {Deployment::mec_cn, false, 2080, MnoMode::single, 0.0014},
    {Deployment::mec_cn, true, 2080, MnoMode::single, 0.0016},
    {Deployment::mec_cn, true, 2080, MnoMode::multi_local, 0.0021},
    {Deployment::mec_cn, false, 8320, MnoMode::single, 0.0055},
    {Deployment::mec_cn, true, 8320, MnoMode::single, 0.0061},
    {Deployment::mec_cn, true, 8320, MnoMode::multi_local, 0.0074},
    {Deployment::mec_cn, false, 31200, MnoMode::single, 0.021},
};

}  // namespace e2elat::reference
