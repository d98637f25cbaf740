#ifndef SCMAEE_METRICS_HPP
#define SCMAEE_METRICS_HPP

#include <string>

namespace scmaee {

// Per-run report; experiment sweeps aggregate means and standard errors of
// these fields across seeds.
struct MetricsReport {
  double energy_efficiency_bits_per_j = 0.0;  // worst-case secrecy bits per Joule
  double sum_secrecy_rate = 0.0;              // bits/s/Hz, worst case
  double backhaul_rate = 0.0;                 // bits/s/Hz actually carried
  double backhaul_capacity = 0.0;             // bits/s/Hz available on active subcarriers
  double backhaul_traffic_mbits = 0.0;        // demand side of the backhaul constraint
  double outage = 0.0;                        // this run: 0 or 1
  double transmission_inutility = 0.0;        // outage x delivery delay in frames
  double convergence_iterations = 0.0;
  double relaxation_gap = 0.0;                // placement rounding gap, Mbits
  double total_power_w = 0.0;

  std::string to_json() const;
};

}  // namespace scmaee

#endif  // SCMAEE_METRICS_HPP
