#pragma once

#include <map>
#include <string>

namespace chernoff::lab {

struct Preset {
  std::string description;
  std::string config;
};

/// Built-in experiments, one per figure family of the transport and heat studies.
inline const std::map<std::string, Preset>& presets() {
  static const std::map<std::string, Preset> table{
      {"fig-transport-sin-power",
       {"transport, sin, power-law a=1 k=1, t=1: error law 2|sin(1/(2n))|",
        "name=fig-transport-sin-power equation=transport initial=sin scheme=power:1,1 t=1 n=1..100"}},
      {"fig-transport-sin-approx",
       {"transport, sin, power-law a=1 k=1, t=2: approximations at n=1 and n=5",
        "name=fig-transport-sin-approx equation=transport initial=sin scheme=power:1,1 t=2 n=1,5 "
        "grid=-2pi,2pi,2001 fit_min=1"}},
      {"fig-transport-expabs-power",
       {"transport, exp(-|x|), power-law a=1 k=1, t=1 on [-5,5]",
        "name=fig-transport-expabs-power equation=transport initial=exp-abs scheme=power:1,1 t=1 n=1..100"}},
      {"fig-transport-sin-slow-half",
       {"transport, sin, slow family gamma=1/2, t=1",
        "name=fig-transport-sin-slow-half equation=transport initial=sin scheme=slow:0.5 t=1 "
        "n=16..4096(geometric) fit_min=16"}},
      {"fig-transport-sin-slow-third",
       {"transport, sin, slow family gamma=1/3, t=1",
        "name=fig-transport-sin-slow-third equation=transport initial=sin scheme=slow:0.3333333333333333 t=1 "
        "n=16..4096(geometric) fit_min=16"}},
      {"fig-transport-sin-slow-sixth",
       {"transport, sin, slow family gamma=1/6, t=1",
        "name=fig-transport-sin-slow-sixth equation=transport initial=sin scheme=slow:0.16666666666666666 t=1 "
        "n=16..4096(geometric) fit_min=16"}},
      {"fig-heat-sin-g1",
       {"heat, sin, G1 (order 1/n), a=1, t=2",
        "name=fig-heat-sin-g1 equation=heat initial=sin scheme=g1 a=1 t=2 n=1..256(geometric)"}},
      {"fig-heat-sin-g2",
       {"heat, sin, G2 (order 1/n^2), a=1, t=2",
        "name=fig-heat-sin-g2 equation=heat initial=sin scheme=g2 a=1 t=2 n=1..256(geometric) probe_order=2"}},
      {"fig-heat-sin-g3",
       {"heat, sin, G3 (order 1/n^3), a=1, t=2",
        "name=fig-heat-sin-g3 equation=heat initial=sin scheme=g3 a=1 t=2 n=1..256(geometric) probe_order=3"}},
      {"fig-heat-sin-approx",
       {"heat, sin, G1, a=1, t=2: approximations at n=1 and n=2",
        "name=fig-heat-sin-approx equation=heat initial=sin scheme=g1 a=1 t=2 n=1,2 fit_min=1 "
        "grid=-2pi,2pi,2001"}},
      {"fig-heat-expabs-g1",
       {"heat, exp(-|x|), G1, a=1, t=1 on [-5,5]",
        "name=fig-heat-expabs-g1 equation=heat initial=exp-abs scheme=g1 a=1 t=1 n=1..256(geometric) fit_min=8"}},
      {"fig-heat-expabs-g2",
       {"heat, exp(-|x|), G2, a=1, t=1 on [-5,5]",
        "name=fig-heat-expabs-g2 equation=heat initial=exp-abs scheme=g2 a=1 t=1 n=1..256(geometric) fit_min=8"}},
      {"fig-heat-expabs-g3",
       {"heat, exp(-|x|), G3, a=1, t=1 on [-5,5]",
        "name=fig-heat-expabs-g3 equation=heat initial=exp-abs scheme=g3 a=1 t=1 n=1..256(geometric) fit_min=8"}},
      {"fig-heat-expabs-approx",
       {"heat, exp(-|x|), G1, a=1, t=1: approximations at n=1 and n=5",
        "name=fig-heat-expabs-approx equation=heat initial=exp-abs scheme=g1 a=1 t=1 n=1,5 fit_min=1"}},
  };
  return table;
}

}  // namespace chernoff::lab
