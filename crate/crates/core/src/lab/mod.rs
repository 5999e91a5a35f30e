//! Worked families: the Pisot polynomials `p_{k,m}` and the primes `p_{l^n}`.

pub mod pisot;
pub mod primes;

pub use pisot::{pisot_csv, pisot_family, pisot_growth_scan, pisot_poly, GrowthScan, PisotRecord, DISK_TOL};
pub use primes::{
    nth_prime_upper_bound, nth_primes, prime_subsequence, prime_subsequence_with_cap, PrimeDemoRecord, PrimeRow,
    DEFAULT_PRIME_INDEX_CAP,
};
