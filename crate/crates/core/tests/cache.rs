use std::fs;

use tatecheck_core::ap::{
    compute_euler, load_euler_data, save_cache, synthesize_euler, EllipticModel, SatoTateModel,
};
use tatecheck_core::config::RunConfig;
use tatecheck_core::verify;

#[test]
fn elliptic_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let e = EllipticModel::new([0, 0, 1, -1, 0]).unwrap();
    let data = compute_euler(&e, 5000, 2).unwrap();
    let path = save_cache(&data, dir.path()).unwrap();
    assert_eq!(path.file_name().unwrap(), "curve_0_0_1_-1_0.elliptic.csv");
    assert_eq!(load_euler_data(&path).unwrap(), data);
    // bit-exact: a second save writes identical bytes
    let bytes = fs::read(&path).unwrap();
    save_cache(&load_euler_data(&path).unwrap(), dir.path()).unwrap();
    assert_eq!(fs::read(&path).unwrap(), bytes);
}

#[test]
fn surface_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let primes = [3u64, 5, 7, 11, 13, 17, 19, 23];
    let data = synthesize_euler(SatoTateModel::Usp4, &primes, 4).unwrap();
    let path = save_cache(&data, dir.path()).unwrap();
    assert_eq!(load_euler_data(&path).unwrap(), data);
}

#[test]
fn verify_reuses_cached_counts() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"
r = 1
base_field = "totally_real"
prime_bound = 20000
cache_dir = "cache"
output = "lines"
[[factor]]
id = "E"
kind = "elliptic"
exponent = 2
curve = [0, 0, 1, -1, 0]
"#;
    let cfg = RunConfig::parse(text, dir.path()).unwrap();
    let first = verify::run(&cfg).unwrap();
    assert_eq!(first.sources[0].origin, "curve");
    assert!(dir
        .path()
        .join("cache/curve_0_0_1_-1_0.elliptic.csv")
        .exists());
    let second = verify::run(&cfg).unwrap();
    assert_eq!(second.sources[0].origin, "cache");
    assert_eq!(first.render_lines(), second.render_lines());

    // a larger bound cannot be served from the smaller cache
    let mut bigger = cfg.clone();
    bigger.prime_bound = 30000;
    assert_eq!(verify::run(&bigger).unwrap().sources[0].origin, "curve");
}
