//! Build the genus-4 surface from its coordinates and check it by hand.

use origami_search::search::filters::{slope_test, vertical_check};
use origami_search::{lyapunov_sum, SurfaceCoordinates};

const COORDS: &str =
    "(((1, 1, 1, 1, 1, 1), [[0, 5, 3, 1, 2, 4], [0, 5, 3, 1, 2, 4]]), 0, ((2, 2, 2), [[0, 1, 2], [0, 1, 2]]))";

fn main() {
    let c: SurfaceCoordinates = COORDS.parse().unwrap();
    let o = c.assemble().unwrap();
    let s = o.stratum();
    println!("{o}");
    println!("{} genus {}", s.kappa, s.genus);
    println!("horizontal {:?}", o.horizontal_cylinders().0);
    println!("vertical two cycles: {}", vertical_check(&o, c.d_opt));
    for k in 1..=c.d_opt as i64 {
        println!("h^{k} v: {:?}", o.slope_monodromy(k).cycle_type());
    }
    println!("slope test: {}", slope_test(&o, c.d_opt));
    let l = lyapunov_sum(&o);
    println!("orbit {} sum {}", l.orbit_size, origami_search::lyapunov::render(&l.sum));
}
