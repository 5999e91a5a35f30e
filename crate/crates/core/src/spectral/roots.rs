//! Simultaneous root finding by Aberth–Ehrlich iteration, with inclusion
//! radii and cluster merging.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::poly::Poly;
use crate::scalar::Real;
use crate::Extended;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootStatus {
    Resolved,
    /// Iteration did not converge, or some cluster is too wide to separate.
    Unresolved,
}

/// Group of approximations whose inclusion disks overlap; the disk
/// `|z - center| <= radius` contains exactly `multiplicity` roots.
#[derive(Clone, Debug, PartialEq)]
pub struct RootCluster<F> {
    pub center: Complex<F>,
    pub radius: F,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootSet<F> {
    /// One approximation per root, counted with multiplicity.
    pub approximations: Vec<Complex<F>>,
    /// Inclusion radius per approximation.
    pub radii: Vec<F>,
    pub clusters: Vec<RootCluster<F>>,
    pub status: RootStatus,
    pub iterations: usize,
    /// Whether the result came from the extended-precision retry.
    pub extended: bool,
    /// Length used to scale absolute tolerances: `max(1, Cauchy bound)`.
    pub scale: F,
}

impl<F: Real> RootSet<F> {
    pub fn is_resolved(&self) -> bool {
        self.status == RootStatus::Resolved
    }

    /// Coefficients of `prod (x - z_i)`, lowest degree first.
    pub fn reconstruct(&self) -> Vec<Complex<F>> {
        let mut out = vec![Complex::one()];
        for &z in &self.approximations {
            let mut next = vec![Complex::zero(); out.len() + 1];
            for (j, &c) in out.iter().enumerate() {
                next[j + 1] = next[j + 1] + c;
                next[j] = next[j] - c * z;
            }
            out = next;
        }
        out
    }

    pub fn max_modulus(&self) -> F {
        self.approximations.iter().map(|z| z.norm()).fold(F::zero(), F::max)
    }

    fn map<G: Real>(&self, f: impl Fn(F) -> G) -> RootSet<G> {
        let cmap = |z: &Complex<F>| Complex::new(f(z.re), f(z.im));
        RootSet {
            approximations: self.approximations.iter().map(cmap).collect(),
            radii: self.radii.iter().map(|&r| f(r)).collect(),
            clusters: self
                .clusters
                .iter()
                .map(|c| RootCluster { center: cmap(&c.center), radius: f(c.radius), multiplicity: c.multiplicity })
                .collect(),
            status: self.status,
            iterations: self.iterations,
            extended: self.extended,
            scale: f(self.scale),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RootOptions<F> {
    pub max_iterations: usize,
    /// Absolute merge distance, multiplied by the scale of the polynomial.
    pub cluster_tol: F,
}

impl<F: Real> Default for RootOptions<F> {
    fn default() -> Self {
        RootOptions { max_iterations: 2000, cluster_tol: F::default_cluster_tol() }
    }
}

/// All complex roots of `p` with the default options for `F`.
pub fn all_roots<F: Real>(p: &Poly) -> RootSet<F> {
    all_roots_with(p, &RootOptions::default())
}

/// As [`all_roots`], but an unresolved result is recomputed in double-double
/// precision and converted back to `F`.
pub fn all_roots_refined<F: Real>(p: &Poly) -> RootSet<F> {
    let first = all_roots::<F>(p);
    if first.is_resolved() {
        return first;
    }
    let opts = RootOptions::<Extended> {
        max_iterations: 4000,
        cluster_tol: Extended::lit(F::default_cluster_tol().to_f64().unwrap_or(1e-8)),
    };
    let mut second = all_roots_with::<Extended>(p, &opts).map(convert::<Extended, F>);
    second.extended = true;
    second
}

pub(crate) fn convert<G: Real, F: Real>(x: G) -> F {
    match x.to_rational() {
        Some(r) => F::from_rational(&r),
        None => F::lit(x.to_f64().unwrap_or(f64::NAN)),
    }
}

pub fn all_roots_with<F: Real>(p: &Poly, opts: &RootOptions<F>) -> RootSet<F> {
    let n = p.degree();
    let lead = F::from_rational(&p.leading());
    let coeffs: Vec<F> = p.to_real::<F>().into_iter().map(|c| c / lead).collect();
    let scale = F::from_rational(&p.cauchy_bound()).max(F::one());
    if n == 0 {
        return RootSet {
            approximations: vec![],
            radii: vec![],
            clusters: vec![],
            status: RootStatus::Resolved,
            iterations: 0,
            extended: false,
            scale,
        };
    }

    let mut z = initial_guesses(&coeffs);
    let mut done = vec![false; n];
    let mut iterations = 0;
    while iterations < opts.max_iterations && done.iter().any(|d| !d) {
        iterations += 1;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (pv, dv, err) = horner(&coeffs, z[i]);
            if pv.norm() <= err {
                done[i] = true;
                continue;
            }
            let mut s: Complex<F> = Complex::zero();
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    s = s + (z[i] - zj).inv();
                }
            }
            let w: Complex<F> = pv / dv;
            let step: Complex<F> = w / (Complex::<F>::one() - w * s);
            if !step.re.is_finite() || !step.im.is_finite() {
                // derivative vanished; nudge off the critical point
                z[i] = z[i] * Complex::new(F::one() + F::lit(1e-3), F::lit(1e-3));
                continue;
            }
            z[i] = z[i] - step;
        }
    }
    let converged = done.iter().all(|&d| d)
        || (0..n).all(|i| {
            let (pv, _, err) = horner(&coeffs, z[i]);
            pv.norm() <= err
        });

    let radii = inclusion_radii(&coeffs, &z);
    let clusters = cluster(&z, &radii, opts.cluster_tol * scale);
    let width_limit = opts.cluster_tol.sqrt() * scale;
    let wide = clusters.iter().any(|c| !(c.radius <= width_limit));
    let status = if converged && !wide { RootStatus::Resolved } else { RootStatus::Unresolved };
    RootSet { approximations: z, radii, clusters, status, iterations, extended: false, scale }
}

/// Points on a circle of the Fujiwara radius, rotated off the real axis.
fn initial_guesses<F: Real>(monic: &[F]) -> Vec<Complex<F>> {
    let n = monic.len() - 1;
    let mut radius = F::zero();
    for j in 1..=n {
        let mut c = monic[n - j].abs();
        if j == n {
            c = c / F::lit(2.0);
        }
        radius = radius.max(c.powf(F::one() / F::from_count(j)));
    }
    radius = (radius * F::lit(2.0)).max(F::lit(1e-3));
    let tau = F::TAU();
    (0..n)
        .map(|j| {
            let theta = tau * F::from_count(j) / F::from_count(n) + F::lit(0.4);
            Complex::from_polar(radius, theta)
        })
        .collect()
}

/// `p(z)`, `p'(z)` and a running bound on the rounding error of `p(z)`.
fn horner<F: Real>(coeffs: &[F], z: Complex<F>) -> (Complex<F>, Complex<F>, F) {
    let mut p = Complex::zero();
    let mut dp = Complex::zero();
    let mut mag = F::zero();
    let r = z.norm();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + Complex::new(c, F::zero());
        mag = mag * r + c.abs();
    }
    let n = F::from_count(coeffs.len());
    (p, dp, F::lit(4.0) * n * F::unit_roundoff() * mag)
}

/// Radii of the disks around each approximation whose union contains every
/// root, each connected component holding as many roots as approximations.
fn inclusion_radii<F: Real>(monic: &[F], z: &[Complex<F>]) -> Vec<F> {
    let n = F::from_count(z.len());
    (0..z.len())
        .map(|i| {
            let (pv, _, err) = horner(monic, z[i]);
            let mut denom = F::one();
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    denom = denom * (z[i] - zj).norm();
                }
            }
            let r = n * (pv.norm() + err) / denom;
            if r.is_nan() {
                F::infinity()
            } else {
                r
            }
        })
        .collect()
}

fn cluster<F: Real>(z: &[Complex<F>], radii: &[F], merge: F) -> Vec<RootCluster<F>> {
    let n = z.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            let d = (z[i] - z[j]).norm();
            if d <= radii[i] + radii[j] || d <= merge {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
        .into_iter()
        .map(|members| {
            let m = F::from_count(members.len());
            let sum = members.iter().fold(Complex::<F>::zero(), |acc, &i| acc + z[i]);
            let center = sum / Complex::new(m, F::zero());
            let radius = if members.len() == 1 {
                radii[members[0]]
            } else {
                members.iter().map(|&i| (z[i] - center).norm() + radii[i]).fold(F::zero(), F::max)
            };
            RootCluster { center, radius, multiplicity: members.len() }
        })
        .collect()
}
