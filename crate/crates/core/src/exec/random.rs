use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{canonicalize, GroundAction, GroundTask, Name, State};

/// A seeded random STRIPS task over props `p0..` and actions `a0..`.
///
/// Each proposition joins an action's pre, add and del sets independently
/// with probability `density`; add and del may overlap. Init and goal are
/// drawn the same way.
pub fn random_task(seed: u64, n_props: usize, n_actions: usize, density: f64) -> GroundTask {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let density = density.clamp(0.0, 1.0);
    let props: Vec<Name> = (0..n_props).map(|i| Name::lit(&format!("p{i}"))).collect();
    let pick = |rng: &mut ChaCha8Rng| -> Vec<Name> {
        props.iter().filter(|_| rng.gen_bool(density)).cloned().collect()
    };
    let actions = (0..n_actions)
        .map(|i| {
            let pre = pick(&mut rng);
            let add = pick(&mut rng);
            let del = pick(&mut rng);
            GroundAction::new(Name::lit(&format!("a{i}")), pre, add, del)
        })
        .collect();
    let init = State::new(pick(&mut rng));
    let goal = pick(&mut rng).into_iter().collect();
    canonicalize(GroundTask { props: props.iter().cloned().collect(), actions, init, goal })
        .expect("generated action names are distinct")
}
