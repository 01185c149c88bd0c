//! Small instance fixtures shared by the unit, integration, and acceptance
//! suites.

use crate::game::{agent, AdditiveGame, AgentId};

/// The five-agent worked example: three original agents `u1,u2,u3` and two
/// additional agents `w1,w2`.
///
/// Arcs: `u1->u2 = -1`, `u3->u1 = -2`, `u3->u2 = 2`, `u1->w1 = 1`,
/// `w1->u1 = -1`, `u1->w2 = 1`, `w2->u1 = -1`, `w2->u3 = 1`. The designated
/// agent is `u1`. Returns `(game, u1, display names)`.
pub fn section2_example() -> (AdditiveGame, AgentId, [&'static str; 5]) {
    let names = ["u1", "u2", "u3", "w1", "w2"];
    let (u1, u2, u3, w1, w2) = (agent(0), agent(1), agent(2), agent(3), agent(4));
    let mut g = AdditiveGame::new(5);
    g.mark_additional(w1);
    g.mark_additional(w2);
    g.set_utility(u1, u2, -1);
    g.set_utility(u3, u1, -2);
    g.set_utility(u3, u2, 2);
    g.set_utility(u1, w1, 1);
    g.set_utility(w1, u1, -1);
    g.set_utility(u1, w2, 1);
    g.set_utility(w2, u1, -1);
    g.set_utility(w2, u3, 1);
    (g, u1, names)
}
