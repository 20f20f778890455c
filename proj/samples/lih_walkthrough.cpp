// Copyright 2026 The uccvqe Authors
// SPDX-License-Identifier: Apache-2.0

// Runs one LiH geometry through every method and prints a comparison table.
//   lih_walkthrough [path/to/file.fcidump]

#include <cstdio>
#include <fstream>
#include <iostream>

#include "uccvqe/entropy.hpp"
#include "uccvqe/fci.hpp"
#include "uccvqe/fcidump.hpp"
#include "uccvqe/ml.hpp"
#include "uccvqe/refstate.hpp"
#include "uccvqe/vqe.hpp"

using namespace uccvqe;

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : UCCVQE_DATA_DIR "/LiH/02_1.3818.fcidump";
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << '\n';
    return 1;
  }
  const IntegralSet ints = parse_fcidump(in);

  const ReferenceState ref = mp2(ints, nullptr);
  const double e_fci = fci_ground_state(ints).energy;
  std::printf("%s\n  E_hf  = %.10f\n  E_mp2 = %.10f\n  E_fci = %.10f\n\n", path.c_str(), ref.e_hf,
              ref.e_hf + ref.e_mp2, e_fci);

  std::printf("%-8s %16s %12s %8s %6s\n", "method", "energy", "error", "params", "iters");
  auto report = [&](const char* name, const VqeResult& r) {
    std::printf("%-8s %16.10f %12.2e %3d/%-4d %6d\n", name, r.energy, r.energy - e_fci, r.n_params_final,
                r.n_params_initial, r.n_iterations);
  };
  VqeOptions opts;
  report("plain", run_uccsd_vqe(ints, opts));
  opts.use_spin_adaptation = true;
  report("sa", run_uccsd_vqe(ints, opts));
  opts.use_saf = true;
  report("sa-saf", run_uccsd_vqe(ints, opts));
  opts.use_saf = false;
  const MlResult ml = run_ml_assisted_vqe(ints, opts, MlOptions{});
  report("ml", ml.vqe);

  const EntropyProfile prof = entropy_profile(ints, EntropySource::kMp2);
  std::printf("\nMP2 orbital entropies:");
  for (double s : prof.entropies) std::printf(" %.4f", s);
  const auto frozen = select_frozen(prof, ints.n_occupied(), FreezePolicy::count(1));
  const auto savings = freeze_savings(ints.n_spatial(), ints.n_occupied(), 1);
  std::printf("\nfreeze {%d}: %s\n", frozen.front(), to_string(savings).c_str());
  return 0;
}
