//! Seeded identity suites: chain maps, homotopies, well-definedness, metric
//! and norm properties. Every check is an exact equality or inequality.

use num_traits::Signed;
use rand::Rng;
use serde::Serialize;

use crate::bar::{boundary_cbar, boundary_cprime, phi_g, psi};
use crate::chain::{chain_to_json, format_q, q, Chain, ChainKind, GroupChain, Tuple, Q};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupModel};
use crate::hochschild::hochschild_boundary;
use crate::homotopy::{boundary_e, translate_chain, Transfer};
use crate::metric::{CosetSection, WordMetric};
use crate::norms::{class_sample, convolve, NormFamily, NormKind};
use crate::sample::{substream, ElementPool, SampleRng};

/// Failures kept verbatim per identity; the rest are only counted.
pub const MAX_LISTED_FAILURES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub generator: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity_name: String,
    pub model: String,
    pub degree: usize,
    pub samples: usize,
    /// Samples whose cyclic boundary term needs a different conjugator.
    pub cyclic_samples: usize,
    pub failure_count: usize,
    pub failures: Vec<Failure>,
}

impl IdentityReport {
    fn new(name: &str, model: &GroupModel, degree: usize) -> Self {
        Self {
            identity_name: name.to_string(),
            model: model.name().to_string(),
            degree,
            samples: 0,
            cyclic_samples: 0,
            failure_count: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    /// Records one sample; `Ok(Some(detail))` and `Err` both count as failures.
    fn record(&mut self, model: &GroupModel, t: &[GroupElement], outcome: Result<Option<String>>) {
        self.samples += 1;
        let detail = match outcome {
            Ok(None) => return,
            Ok(Some(d)) => d,
            Err(e) => e.to_string(),
        };
        self.failure_count += 1;
        if self.failures.len() < MAX_LISTED_FAILURES {
            self.failures.push(Failure {
                generator: format_tuple(model, t),
                detail,
            });
        }
    }
}

pub fn format_tuple(model: &GroupModel, t: &[GroupElement]) -> String {
    let parts: Vec<String> = t.iter().map(|g| model.format_element(g)).collect();
    format!("({})", parts.join(", "))
}

/// `None` when the chains have the same terms, else their difference as JSON.
pub fn compare(model: &GroupModel, lhs: &GroupChain, rhs: &GroupChain) -> Option<String> {
    if lhs.terms().eq(rhs.terms()) {
        return None;
    }
    let mut diff = lhs.clone();
    for (t, x) in rhs.terms() {
        diff.add_term(t.clone(), -x);
    }
    Some(format!("lhs - rhs = {}", chain_to_json(model, &diff)))
}

fn zero_or_diff(model: &GroupModel, c: &GroupChain) -> Option<String> {
    (!c.is_zero()).then(|| format!("defect = {}", chain_to_json(model, c)))
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyConfig {
    /// Degrees `0..=max_degree` are checked.
    pub max_degree: usize,
    pub samples: usize,
    pub seed: u64,
    /// Sampling ball for infinite models.
    pub radius: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_degree: 3,
            samples: 200,
            seed: 7,
            radius: 2,
        }
    }
}

/// Class representatives used as `h`: all classes of a finite model, else the
/// classes met in the ball of radius `radius`.
pub fn default_hs(model: &GroupModel, radius: usize) -> Result<Vec<GroupElement>> {
    class_sample(model, radius)
}

struct Setup {
    pool: ElementPool,
    transfers: Vec<Transfer>,
    centralizers: Vec<Vec<GroupElement>>,
}

impl Setup {
    fn new(model: &GroupModel, hs: &[GroupElement], radius: usize) -> Result<Self> {
        if hs.is_empty() {
            return Err(Error::MalformedInput("no class representatives to test".into()));
        }
        let pool = ElementPool::new(model, radius)?;
        let transfers: Vec<Transfer> = hs.iter().map(|h| Transfer::new(model, h)).collect();
        let centralizers = transfers
            .iter()
            .map(|tr| {
                let z = tr.localization().section().centralizer();
                pool.elements().iter().filter(|g| z.contains(g)).cloned().collect()
            })
            .collect();
        Ok(Self {
            pool,
            transfers,
            centralizers,
        })
    }

    fn pick(&self, rng: &mut SampleRng) -> usize {
        rng.gen_range(0..self.transfers.len())
    }

    fn z_tuple(&self, rng: &mut SampleRng, which: usize, len: usize) -> Tuple {
        let z = &self.centralizers[which];
        (0..len).map(|_| z[rng.gen_range(0..z.len())].clone()).collect()
    }

    /// A class-component tuple for `h`, preferring one that exercises the
    /// cyclic boundary term on every other draw.
    fn class_tuple(&self, rng: &mut SampleRng, which: usize, n: usize, want_cyclic: bool) -> (Tuple, bool) {
        let h = self.transfers[which].h();
        if want_cyclic && n > 0 {
            if let Ok(t) = self.pool.cyclic_class_tuple(rng, h, n, 64) {
                return (t, true);
            }
        }
        (self.pool.class_tuple(rng, h, n), false)
    }
}

fn stream_index(suite: u64, identity: u64, degree: usize) -> u64 {
    (suite << 32) | (identity << 16) | degree as u64
}

/// `b∘π_h = π_h∘b`, `∂ψ = ψ∂`, `bφ_h = φ_h∂`, `bθ_h = θ_h∂` and `π_hι_h = id`.
pub fn chain_map_suite(model: &GroupModel, hs: &[GroupElement], cfg: &VerifyConfig) -> Result<Vec<IdentityReport>> {
    let setup = Setup::new(model, hs, cfg.radius)?;
    let mut out = Vec::new();
    for n in 0..=cfg.max_degree {
        let mut rng = substream(cfg.seed, stream_index(1, 0, n));
        let mut rep = IdentityReport::new("b pi_h = pi_h b", model, n);
        for i in 0..cfg.samples {
            let w = setup.pick(&mut rng);
            let (t, cyclic) = setup.class_tuple(&mut rng, w, n, i % 2 == 0);
            rep.cyclic_samples += cyclic as usize;
            let loc = setup.transfers[w].localization();
            let c = Chain::generator(ChainKind::Hochschild, t.clone());
            let outcome = (|| {
                let lhs = hochschild_boundary(model, &loc.pi_h(&c)?)?;
                let rhs = loc.pi_h(&hochschild_boundary(model, &c)?)?;
                Ok(compare(model, &lhs, &rhs))
            })();
            rep.record(model, &t, outcome);
        }
        out.push(rep);

        if n > 0 {
            let mut rng = substream(cfg.seed, stream_index(1, 1, n));
            let mut rep = IdentityReport::new("d psi = psi d", model, n);
            for _ in 0..cfg.samples {
                let t = setup.pool.tuple(&mut rng, n);
                let c = Chain::generator(ChainKind::BarPrime, t.clone());
                let outcome = (|| {
                    let lhs = boundary_cbar(model, &psi(model, &c)?)?;
                    let rhs = psi(model, &boundary_cprime(model, &c)?)?;
                    Ok(compare(model, &lhs, &rhs))
                })();
                rep.record(model, &t, outcome);
            }
            out.push(rep);

            let mut rng = substream(cfg.seed, stream_index(1, 2, n));
            let mut rep = IdentityReport::new("b phi_h = phi_h d", model, n);
            for _ in 0..cfg.samples {
                let w = setup.pick(&mut rng);
                let h = setup.transfers[w].h();
                let t = setup.z_tuple(&mut rng, w, n);
                let c = Chain::generator(ChainKind::BarPrime, t.clone());
                let outcome = (|| {
                    let lhs = hochschild_boundary(model, &phi_g(model, h, &c)?)?;
                    let rhs = phi_g(model, h, &boundary_cprime(model, &c)?)?;
                    Ok(compare(model, &lhs, &rhs))
                })();
                rep.record(model, &t, outcome);
            }
            out.push(rep);
        }

        let mut rng = substream(cfg.seed, stream_index(1, 3, n));
        let mut rep = IdentityReport::new("b theta_h = theta_h d", model, n);
        for _ in 0..cfg.samples {
            let w = setup.pick(&mut rng);
            let tr = &setup.transfers[w];
            let t = setup.pool.tuple(&mut rng, n + 1);
            let c = Chain::generator(ChainKind::E, t.clone());
            let outcome = (|| {
                let lhs = hochschild_boundary(model, &tr.theta(&c)?)?;
                let rhs = tr.theta(&boundary_e(&c)?)?;
                Ok(compare(model, &lhs, &rhs))
            })();
            rep.record(model, &t, outcome);
        }
        out.push(rep);

        let mut rng = substream(cfg.seed, stream_index(1, 4, n));
        let mut rep = IdentityReport::new("pi_h iota_h = id", model, n);
        for _ in 0..cfg.samples {
            let w = setup.pick(&mut rng);
            let tr = &setup.transfers[w];
            let mut t = setup.z_tuple(&mut rng, w, n);
            t.push(model.mul(&model.inv(&model.product(&t)), tr.h()));
            let c = Chain::generator(ChainKind::Hochschild, t.clone());
            let loc = tr.localization();
            let outcome = (|| Ok(compare(model, &loc.pi_h(&loc.iota_h(&c)?)?, &c)))();
            rep.record(model, &t, outcome);
        }
        out.push(rep);
    }
    Ok(out)
}

/// `id − i^E p^E = D∂ + ∂D` on `E_n`, `Z_h`-equivariance of `D`, and the
/// pushed identity `id − ι_hπ_h = bD̄ + D̄b` on class components.
pub fn homotopy_suite(model: &GroupModel, hs: &[GroupElement], cfg: &VerifyConfig) -> Result<Vec<IdentityReport>> {
    let setup = Setup::new(model, hs, cfg.radius)?;
    let mut out = Vec::new();
    for n in 0..=cfg.max_degree {
        let mut rng = substream(cfg.seed, stream_index(2, 0, n));
        let mut rep = IdentityReport::new("id - iE pE = D d + d D", model, n);
        for _ in 0..cfg.samples {
            let tr = &setup.transfers[setup.pick(&mut rng)];
            let t = setup.pool.tuple(&mut rng, n + 1);
            let c = Chain::generator(ChainKind::E, t.clone());
            let outcome = tr.homotopy_defect(&c).map(|d| zero_or_diff(model, &d));
            rep.record(model, &t, outcome);
        }
        out.push(rep);

        let mut rng = substream(cfg.seed, stream_index(2, 1, n));
        let mut rep = IdentityReport::new("D(z t) = z D(t)", model, n);
        for _ in 0..cfg.samples {
            let w = setup.pick(&mut rng);
            let tr = &setup.transfers[w];
            let t = setup.pool.tuple(&mut rng, n + 1);
            let z = setup.z_tuple(&mut rng, w, 1).remove(0);
            let c = Chain::generator(ChainKind::E, t.clone());
            let outcome = (|| {
                let lhs = tr.d(&translate_chain(model, &z, &c))?;
                let rhs = translate_chain(model, &z, &tr.d(&c)?);
                Ok(compare(model, &lhs, &rhs))
            })();
            rep.record(model, &t, outcome);
        }
        out.push(rep);

        let mut rng = substream(cfg.seed, stream_index(2, 2, n));
        let mut rep = IdentityReport::new("id - iota_h pi_h = b Dbar + Dbar b", model, n);
        for i in 0..cfg.samples {
            let w = setup.pick(&mut rng);
            let (t, cyclic) = setup.class_tuple(&mut rng, w, n, i % 2 == 0);
            rep.cyclic_samples += cyclic as usize;
            let c = Chain::generator(ChainKind::Hochschild, t.clone());
            let outcome = setup.transfers[w]
                .pushed_homotopy_defect(&c)
                .map(|d| zero_or_diff(model, &d));
            rep.record(model, &t, outcome);
        }
        out.push(rep);
    }
    Ok(out)
}

/// `π_h` computed with `r` and with `a·r` agree for `a ∈ Z_h`.
pub fn well_definedness_suite(
    model: &GroupModel,
    hs: &[GroupElement],
    cfg: &VerifyConfig,
    trials: usize,
) -> Result<Vec<IdentityReport>> {
    let setup = Setup::new(model, hs, cfg.radius)?;
    let mut out = Vec::new();
    for n in 0..=cfg.max_degree {
        let mut rng = substream(cfg.seed, stream_index(3, 0, n));
        let mut rep = IdentityReport::new("pi_h(r) = pi_h(a r)", model, n);
        for i in 0..trials {
            let w = setup.pick(&mut rng);
            let (t, cyclic) = setup.class_tuple(&mut rng, w, n, i % 2 == 0);
            rep.cyclic_samples += cyclic as usize;
            let a = setup.z_tuple(&mut rng, w, 1).remove(0);
            let loc = setup.transfers[w].localization();
            let outcome = (|| {
                let r = loc.conjugator(&model.product(&t))?;
                let x = loc.pi_tuple_with(&t, &r)?;
                let y = loc.pi_tuple_with(&t, &model.mul(&a, &r))?;
                Ok((x != y).then(|| {
                    format!(
                        "a = {}: {} vs {}",
                        model.format_element(&a),
                        format_tuple(model, &x),
                        format_tuple(model, &y)
                    )
                }))
            })();
            rep.record(model, &t, outcome);
        }
        out.push(rep);
    }
    Ok(out)
}

/// `|p_h(g)| ≤ 2|g|` and `p_h(ag) = a·p_h(g)` for every `g` in `window` and
/// every `a ∈ Z_h ∩ window`.
pub fn metric_suite(model: &GroupModel, h: &GroupElement, window: &[GroupElement]) -> Result<Vec<IdentityReport>> {
    let metric = WordMetric::new(model);
    let cs = CosetSection::new(model, h);
    let z: Vec<&GroupElement> = window.iter().filter(|a| cs.centralizer().contains(a)).collect();
    let name = model.format_element(h);
    let mut lip = IdentityReport::new(&format!("|p_h(g)| <= 2|g| at h = {name}"), model, 0);
    let mut eqv = IdentityReport::new(&format!("p_h(a g) = a p_h(g) at h = {name}"), model, 0);
    for g in window {
        let p = cs.project(g);
        let outcome = p.as_ref().map_err(Clone::clone).map(|p| {
            let (lp, lg) = (metric.length(p), metric.length(g));
            (lp > 2 * lg).then(|| format!("|p_h(g)| = {lp}, |g| = {lg}"))
        });
        lip.record(model, std::slice::from_ref(g), outcome);
        for a in &z {
            let outcome = (|| {
                let lhs = cs.project(&model.mul(a, g))?;
                let rhs = model.mul(a, p.as_ref().map_err(Clone::clone)?);
                Ok((lhs != rhs).then(|| {
                    format!(
                        "a = {}: {} vs {}",
                        model.format_element(a),
                        model.format_element(&lhs),
                        model.format_element(&rhs)
                    )
                }))
            })();
            eqv.record(model, std::slice::from_ref(g), outcome);
        }
    }
    Ok(vec![lip, eqv])
}

/// Random group-ring element with 1 to 3 terms and coefficients in `[-3, 3]`.
fn random_algebra_element(pool: &ElementPool, rng: &mut SampleRng) -> GroupChain {
    let mut f = Chain::zero(ChainKind::GroupRing, 0);
    for _ in 0..rng.gen_range(1..=3) {
        let x = rng.gen_range(1..=3i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
        f.add_term(vec![pool.draw(rng)], q(x));
    }
    f
}

/// `‖δ_g‖ = (1+|g|)^k`, submultiplicativity, monotonicity in `k`, homogeneity
/// and the triangle inequality on `pairs` seeded pairs, for `k ≤ k_max`.
pub fn norm_suite(model: &GroupModel, cfg: &VerifyConfig, pairs: usize, k_max: u32) -> Result<Vec<IdentityReport>> {
    let pool = ElementPool::new(model, cfg.radius)?;
    let metric = WordMetric::new(model);
    let nf = NormFamily::new(model, NormKind::GroupAlgebra);
    let mut delta = IdentityReport::new("|delta_g|_k = (1+|g|)^k", model, 0);
    for g in pool.elements() {
        let c = Chain::generator(ChainKind::GroupRing, vec![g.clone()]);
        let outcome = (0..=k_max)
            .find_map(|k| {
                let want = Q::from_integer((1 + metric.length(g)).pow(k).into());
                let got = nf.norm(&c, k);
                (got != want).then(|| format!("k = {k}: {} vs {}", format_q(&got), format_q(&want)))
            });
        delta.record(model, std::slice::from_ref(g), Ok(outcome));
    }
    let mut sub = IdentityReport::new("|f*g|_k <= |f|_k |g|_k", model, 0);
    let mut mono = IdentityReport::new("|f|_k <= |f|_(k+1)", model, 0);
    let mut homog = IdentityReport::new("|q f|_k = |q| |f|_k", model, 0);
    let mut tri = IdentityReport::new("|f+g|_k <= |f|_k + |g|_k", model, 0);
    let mut rng = substream(cfg.seed, stream_index(4, 0, 0));
    for _ in 0..pairs {
        let f = random_algebra_element(&pool, &mut rng);
        let g = random_algebra_element(&pool, &mut rng);
        let scalar = Q::new(rng.gen_range(-5..=5i64).into(), rng.gen_range(1..=4i64).into());
        let key: Tuple = f.terms().chain(g.terms()).map(|(t, _)| t[0].clone()).collect();
        let fg = convolve(model, &f, &g);
        let sum = f.add(&g)?;
        let scaled = f.scale(&scalar);
        let mut fails = [None, None, None, None];
        for k in 0..=k_max {
            let (nf_, ng) = (nf.norm(&f, k), nf.norm(&g, k));
            if fails[0].is_none() && nf.norm(&fg, k) > &nf_ * &ng {
                fails[0] = Some(format!("k = {k}"));
            }
            if fails[1].is_none() && nf_ > nf.norm(&f, k + 1) {
                fails[1] = Some(format!("k = {k}"));
            }
            if fails[2].is_none() && nf.norm(&scaled, k) != scalar.abs() * &nf_ {
                fails[2] = Some(format!("k = {k}, q = {}", format_q(&scalar)));
            }
            if fails[3].is_none() && nf.norm(&sum, k) > &nf_ + &ng {
                fails[3] = Some(format!("k = {k}"));
            }
        }
        let [a, b, c, d] = fails;
        sub.record(model, &key, Ok(a));
        mono.record(model, &key, Ok(b));
        homog.record(model, &key, Ok(c));
        tri.record(model, &key, Ok(d));
    }
    Ok(vec![delta, sub, mono, homog, tri])
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifySummary {
    pub config: VerifyConfig,
    pub model: String,
    pub class_reps: Vec<String>,
    pub all_passed: bool,
    pub reports: Vec<IdentityReport>,
}

/// Runs every identity suite on one model.
pub fn verify_identities(model: &GroupModel, cfg: &VerifyConfig) -> Result<VerifySummary> {
    let hs = default_hs(model, cfg.radius)?;
    let mut reports = chain_map_suite(model, &hs, cfg)?;
    reports.extend(homotopy_suite(model, &hs, cfg)?);
    reports.extend(well_definedness_suite(model, &hs, cfg, cfg.samples.clamp(1, 100))?);
    let window = ElementPool::new(model, cfg.radius)?.elements().to_vec();
    for h in &hs {
        reports.extend(metric_suite(model, h, &window)?);
    }
    reports.extend(norm_suite(model, cfg, cfg.samples, 3)?);
    Ok(VerifySummary {
        config: cfg.clone(),
        model: model.name().to_string(),
        class_reps: hs.iter().map(|h| model.format_element(h)).collect(),
        all_passed: reports.iter().all(IdentityReport::passed),
        reports,
    })
}
