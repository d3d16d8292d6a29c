#include "trs/prism.hpp"

namespace trs {

bool in_forward_cone(const Participant& p, NodeId n, Seconds tau,
                     const TravelTimeOracle& oracle) {
  Seconds t_on = oracle.travel_time(p.req.origin, n);
  if (!is_reachable(t_on)) return false;
  return tau >= p.win.earliest_depart + t_on && tau <= p.win.latest_arrive;
}

bool in_backward_cone(const Participant& p, NodeId n, Seconds tau,
                      const TravelTimeOracle& oracle) {
  Seconds t_nd = oracle.travel_time(n, p.req.destination);
  if (!is_reachable(t_nd)) return false;
  return tau <= p.win.latest_arrive - t_nd && tau >= p.win.earliest_depart;
}

bool in_stp(const Participant& p, NodeId n, Seconds tau,
            const TravelTimeOracle& oracle) {
  return in_forward_cone(p, n, tau, oracle) &&
         in_backward_cone(p, n, tau, oracle);
}

bool in_ppa(const Participant& p, NodeId n, const TravelTimeOracle& oracle) {
  Seconds t_on = oracle.travel_time(p.req.origin, n);
  Seconds t_nd = oracle.travel_time(n, p.req.destination);
  if (!is_reachable(t_on) || !is_reachable(t_nd)) return false;
  return t_on + t_nd <= p.win.latest_arrive - p.win.earliest_depart;
}

}  // namespace trs
