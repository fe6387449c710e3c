//! Exact exponent sums of a few small origamis.

use origami_search::lyapunov::{render, sl2z_orbit, stratum_term};
use origami_search::strata::candidate_strata;
use origami_search::{lyapunov_sum, Origami};

fn main() {
    let examples = [
        ("torus", Origami::from_images(vec![0], vec![0]).unwrap()),
        ("L, 3 squares", Origami::from_images(vec![1, 0, 2], vec![2, 1, 0]).unwrap()),
        (
            "quaternion group",
            Origami::from_images(vec![2, 3, 1, 0, 7, 6, 4, 5], vec![4, 5, 6, 7, 1, 0, 3, 2]).unwrap(),
        ),
    ];
    for (name, o) in examples {
        let l = lyapunov_sum(&o);
        assert_eq!(l.orbit_size, sl2z_orbit(&o).len());
        println!(
            "{name}: {} orbit {} sum {}",
            o.stratum().kappa,
            l.orbit_size,
            render(&l.sum)
        );
    }
    for (k, d) in candidate_strata() {
        println!("{k} d = {d}: stratum term {}", render(&stratum_term(&k)));
    }
}
