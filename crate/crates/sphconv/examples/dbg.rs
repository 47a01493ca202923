fn main() {
    let cfg = sphconv::QuadratureConfig::default();
    for name in ["scale(1)", "scale(0.5)", "f1"] {
        let m = sphconv::builtin(name).unwrap();
        for r in [0.5, 0.8] {
            let res = sphconv::verify::check_length_bounds(&m, r, &cfg);
            println!("{name} r={r}: {:?} residual={:?}\n  {}", res.status, res.residual, res.detail);
        }
    }
    // verify_all f1 failures
    let f1 = sphconv::builtin("f1").unwrap();
    for res in sphconv::verify_all(&f1, &cfg, sphconv::tolerances::DEFAULT_SEED) {
        if res.is_fail() || matches!(res.status, sphconv::CheckStatus::Skipped(_)) {
            println!("f1 {}: {:?} | {}", res.name, res.status, res.detail);
        }
    }
    let f2 = sphconv::builtin("f2").unwrap();
    for res in sphconv::verify_all(&f2, &cfg, sphconv::tolerances::DEFAULT_SEED) {
        if res.is_fail() {
            println!("f2 FAIL {}: {}", res.name, res.detail);
        }
    }
    let f3 = sphconv::builtin("f3").unwrap();
    for res in sphconv::verify_all(&f3, &cfg, sphconv::tolerances::DEFAULT_SEED) {
        if res.is_fail() {
            println!("f3 FAIL {}: {}", res.name, res.detail);
        }
    }
}
