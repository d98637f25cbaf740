#include "scmaee/model.hpp"
#include "scmaee/rates.hpp"
#include "scmaee/constraints.hpp"
#include "scmaee/kernel.hpp"
#include <cstdio>
int main(){ scmaee::ScenarioParams p; auto inst = scmaee::generate_instance(p, 1); auto a = scmaee::AllocationState::zeros(inst); auto rep = scmaee::constraints::check_all(inst, a, scmaee::Scenario::SFCD, 1e-6); std::printf("residuals=%zu feasible=%d\n", rep.residuals.size(), (int)rep.feasible); return 0; }
