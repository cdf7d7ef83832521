/* Copyright 2026 The pwmelnikov Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "melnikov_detail.hpp"

namespace pwm {

namespace {

MelnikovProfile run_serial(detail::ProfileJob job, const MelnikovOptions& opts) {
  const auto times = detail::sample_times(job.profile.period, opts.samples);
  job.profile.samples.reserve(times.size());
  for (double t : times) job.profile.samples.push_back({t, job.eval(t)});
  locate_zeros(job.profile, job.eval, opts);
  return job.profile;
}

}  // namespace

MelnikovProfile subharmonic_M_serial(const TwoZoneSystem& sys, int n, int m,
                                     const MelnikovOptions& opts) {
  return run_serial(detail::subharmonic_job(sys, n, m, opts), opts);
}

MelnikovProfile heteroclinic_M_serial(const TwoZoneSystem& sys, const MelnikovOptions& opts) {
  return run_serial(detail::heteroclinic_job(sys, opts), opts);
}

}  // namespace pwm
