//! Per-prime Frobenius data: native point counting over the rationals,
//! ingestion and caching of Euler-factor files, and synthetic samples drawn
//! from Sato–Tate measures.

mod curve;
mod euler;
mod primes;
mod synth;

pub use curve::{compute_euler, count_points, good_primes, EllipticModel};
pub use euler::{
    check_elliptic, check_surface, load_euler_data, save_cache, EulerData, EulerEntry, EulerKind,
    LocalFactor,
};
pub use primes::{is_prime, isqrt, primes_up_to};
pub use synth::{synthesize_euler, SatoTateModel};

/// Run `f` on a pool of `jobs` workers (`0` means the global pool).
pub(crate) fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}
