#include "nmifc/hypermember.hpp"

#include <limits>
#include <vector>

namespace nmifc {

namespace {

// Input-agreement pattern: every trace opens with two non-trivial marker
// events; traces sharing a row agree on the first marker, traces sharing a
// column agree on the second.
bool markers_agree(const std::array<Trace, 4>& t) {
  for (const Trace& tr : t) {
    if (tr.size() < 2) return false;
    if (tr[0].kind == Event::Kind::bullet || tr[1].kind == Event::Kind::bullet)
      return false;
  }
  const Trace &t11 = t[0], &t12 = t[1], &t21 = t[2], &t22 = t[3];
  return event_identical(t11[0], t12[0]) && event_identical(t21[0], t22[0]) &&
         event_identical(t11[1], t21[1]) && event_identical(t12[1], t22[1]);
}

// Walks every cut-point quadruple over positions visible to the combined
// observer; returns false as soon as `bad` accepts one.
template <typename F>
bool no_bad_cut(const ObserverSets& obs, const std::array<Trace, 4>& t,
                std::size_t index_cap, F bad) {
  std::array<std::vector<std::size_t>, 4> vis;
  for (int k = 0; k < 4; ++k) {
    vis[k] = visible_positions(obs.low, t[k]);
    if (vis[k].empty()) return true;
  }
  std::size_t budget =
      index_cap ? index_cap : std::numeric_limits<std::size_t>::max();
  for (std::size_t n11 : vis[0])
    for (std::size_t n12 : vis[1])
      for (std::size_t n21 : vis[2])
        for (std::size_t n22 : vis[3]) {
          if (budget == 0) return true;
          --budget;
          if (bad(n11, n12, n21, n22)) return false;
        }
  return true;
}

}  // namespace

bool rd_hyper_member(const DelegationSet& d, const Attacker& a,
                     const std::array<Trace, 4>& t, std::size_t index_cap) {
  if (!markers_agree(t)) return true;
  ObserverSets obs = observer_sets(d, a);
  const Trace &t11 = t[0], &t12 = t[1], &t21 = t[2], &t22 = t[3];
  return no_bad_cut(obs, t, index_cap,
                    [&](std::size_t n11, std::size_t n12, std::size_t n21,
                        std::size_t n22) {
                      return prefix_equiv(obs.trusted, t11, n11 - 1, t12, n12 - 1) &&
                             prefix_equiv(obs.trusted, t21, n21 - 1, t22, n22 - 1) &&
                             prefix_equiv(obs.pub, t11, n11, t21, n21) &&
                             !prefix_equiv(obs.pub, t12, n12, t22, n22) &&
                             !prefix_equiv(obs.low, t12, n12, t22, n22);
                    });
}

bool te_hyper_member(const DelegationSet& d, const Attacker& a,
                     const std::array<Trace, 4>& t, std::size_t index_cap) {
  if (!markers_agree(t)) return true;
  ObserverSets obs = observer_sets(d, a);
  const Trace &t11 = t[0], &t12 = t[1], &t21 = t[2], &t22 = t[3];
  return no_bad_cut(obs, t, index_cap,
                    [&](std::size_t n11, std::size_t n12, std::size_t n21,
                        std::size_t n22) {
                      return prefix_equiv(obs.pub, t11, n11 - 1, t21, n21 - 1) &&
                             prefix_equiv(obs.pub, t12, n12 - 1, t22, n22 - 1) &&
                             prefix_equiv(obs.trusted, t11, n11, t12, n12) &&
                             !prefix_equiv(obs.trusted, t21, n21, t22, n22) &&
                             !prefix_equiv(obs.low, t21, n21, t22, n22);
                    });
}

bool nmif_hyper_member(const DelegationSet& d, const Attacker& a,
                       const std::array<Trace, 4>& t, std::size_t index_cap) {
  return rd_hyper_member(d, a, t, index_cap) &&
         te_hyper_member(d, a, t, index_cap);
}

}  // namespace nmifc
