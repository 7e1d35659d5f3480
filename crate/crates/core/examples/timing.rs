use qchar_core::toda::*;
use std::time::Instant;

fn main() {
    let mut log = Vec::new();
    let samples = draw_samples(1, 2, 5, 100, &mut log);
    for s in &samples {
        let t0 = Instant::now();
        let r = verify_gt_representation(5, s, 100);
        let r2 = verify_whittaker(5, s, 100);
        println!("D=5 {:?}: gt pass={} res={} | whit pass={} res={} ({:?})",
            s, r.pass, r.max_residual, r2.pass, r2.max_residual, t0.elapsed());
    }
}
