use ipdsaw_core::numerics::integrate;
use ipdsaw_core::walk::WalkParams;

fn main() {
    let w = WalkParams::new(2.0).unwrap();
    let (lo, hi) = ipdsaw_core::analytic::a_delta_interval(&w, 0.7);
    println!("A_delta = ({lo}, {hi})");
    for s in [0.5, 1.0, 1.2, 1.29, hi] {
        let r = integrate(|x| x * w.log_mgf_d1(s * x - 0.3).unwrap(), 0.0, 1.0, 1e-12);
        println!("s = {s}: {:?}", r.map(|v| v));
    }
}
