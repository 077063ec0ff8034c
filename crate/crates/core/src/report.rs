//! Suite registry, runner and report rendering.
//!
//! Every check has a stable id `<prefix>.<label>` and a reference string.
//! Results are sorted by id, so reports depend only on the configuration.

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::check::Check;
use crate::clifford::{ad_inverse, ad_of, clifford_op, quad_q, sample_so_w, SpinorOp};
use crate::error::{Error, Result};
use crate::holonomy;
use crate::lie_super::{
    graded_jacobi_holds, iota_hom, iota_homomorphism_failures, iota_is_injective, octonion_iota_hom_dim,
    octonion_span_check, q_check, q_check_gram, q_hat, sl_basis, su_basis, sup_basis, tau_star,
    tau_star_homomorphism_failures, tau_star_stated, theorem314_closure, twist_equivariance, K11Element, SuHTag,
};
use crate::normed_algebra::{octonion_associator_witness, Algebra, NormedElement};
use crate::operators;
use crate::rational::int;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest supported real dimension `m = n · dim K`.
pub const MAX_REAL_DIM: usize = 8;
pub const MAX_DEGREE: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Normed,
    Clifford,
    Lie,
    Operators,
    Kahler,
    Hyperkahler,
    Semiflat,
    Symbols,
    Lefschetz,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Normed,
        Suite::Clifford,
        Suite::Lie,
        Suite::Operators,
        Suite::Kahler,
        Suite::Hyperkahler,
        Suite::Semiflat,
        Suite::Symbols,
        Suite::Lefschetz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Normed => "normed",
            Suite::Clifford => "clifford",
            Suite::Lie => "lie",
            Suite::Operators => "operators",
            Suite::Kahler => "kahler",
            Suite::Hyperkahler => "hyperkahler",
            Suite::Semiflat => "semiflat",
            Suite::Symbols => "symbols",
            Suite::Lefschetz => "lefschetz",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    /// Whether the suite is defined for `alg`.
    pub fn applies_to(self, alg: Algebra) -> bool {
        match self {
            Suite::Kahler => alg == Algebra::C,
            Suite::Hyperkahler => alg == Algebra::H,
            Suite::Semiflat => matches!(alg, Algebra::C | Algebra::H),
            _ => true,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "text" => Some(Format::Text),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Executor {
    Sequential,
    Parallel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    #[serde(serialize_with = "serialize_algebra")]
    pub algebra: Algebra,
    pub n: usize,
    pub suites: Vec<Suite>,
    pub seed: u64,
    pub max_degree: usize,
    pub format: Format,
}

fn serialize_algebra<S: serde::Serializer>(a: &Algebra, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(a.name())
}

impl SuiteConfig {
    /// Validated configuration; an empty `suites` selects every applicable suite.
    pub fn new(algebra: Algebra, n: usize, suites: &[Suite], seed: u64, max_degree: usize, format: Format) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config("n must be at least 1".into()));
        }
        if algebra == Algebra::O && n > 1 {
            return Err(Error::Config("algebra O supports only n = 1".into()));
        }
        if n * algebra.dim() > MAX_REAL_DIM {
            return Err(Error::Config(format!(
                "n · dim K = {} exceeds the supported real dimension {MAX_REAL_DIM}",
                n * algebra.dim()
            )));
        }
        if max_degree > MAX_DEGREE {
            return Err(Error::Config(format!("max degree {max_degree} exceeds {MAX_DEGREE}")));
        }
        for s in suites {
            if !s.applies_to(algebra) {
                let need = match s {
                    Suite::Kahler => "C",
                    Suite::Hyperkahler => "H",
                    _ => "C or H",
                };
                return Err(Error::Config(format!("suite {s} requires algebra {need}, got {algebra}")));
            }
        }
        let mut chosen: Vec<Suite> = if suites.is_empty() {
            Suite::ALL.into_iter().filter(|s| s.applies_to(algebra)).collect()
        } else {
            suites.to_vec()
        };
        chosen.sort();
        chosen.dedup();
        Ok(Self { algebra, n, suites: chosen, seed, max_degree, format })
    }

    pub fn m(&self) -> usize {
        self.n * self.algebra.dim()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    pub paper_ref: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Wall time of the group that produced the check; recorded only on request.
    pub millis: Option<u64>,
}

type Runner = Box<dyn Fn(&mut ChaCha8Rng) -> Result<Vec<Check>> + Send + Sync>;

/// A batch of checks sharing a prefix, a reference and a runner.
pub struct Group {
    pub prefix: String,
    pub anchor: &'static str,
    pub labels: Vec<String>,
    pub skip: Option<String>,
    run: Runner,
}

impl Group {
    fn new(
        prefix: impl Into<String>,
        anchor: &'static str,
        labels: Vec<String>,
        run: impl Fn(&mut ChaCha8Rng) -> Result<Vec<Check>> + Send + Sync + 'static,
    ) -> Self {
        Self { prefix: prefix.into(), anchor, labels, skip: None, run: Box::new(run) }
    }

    fn skipped(prefix: impl Into<String>, anchor: &'static str, labels: Vec<String>, reason: &str) -> Self {
        let mut g = Self::new(prefix, anchor, labels, |_| Ok(Vec::new()));
        g.skip = Some(reason.to_string());
        g
    }

    pub fn ids(&self) -> Vec<String> {
        self.labels.iter().map(|l| format!("{}.{l}", self.prefix)).collect()
    }
}

fn labels(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// `a-b` for `i ≤ j`.
fn pair_labels(names: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    for i in 0..names.len() {
        for j in i..names.len() {
            out.push(format!("{}-{}", names[i], names[j]));
        }
    }
    out
}

/// Labels of a super-bracket table with the given numbers of even and odd
/// basis elements followed by one central element.
fn table_labels(even: usize, odd: usize) -> Vec<String> {
    let total = even + odd + 1;
    let grade = |i: usize| if i < even { "even" } else if i < even + odd { "odd" } else { "center" };
    let mut out: Vec<String> = (0..total).map(|i| format!("scaling.{i}")).collect();
    for i in 0..total {
        for j in i..total {
            out.push(format!("{}-{}.{i}-{j}", grade(i), grade(j)));
        }
    }
    out
}

fn su_dim(alg: Algebra) -> usize {
    match alg {
        Algebra::R => 1,
        Algebra::C => 3,
        Algebra::H => 10,
        Algebra::O => 36,
    }
}

fn k11_names(alg: Algebra) -> Vec<String> {
    (0..2 * alg.dim()).map(|i| operators::k11_basis_name(alg, i)).collect()
}

fn normed_groups(alg: Algebra) -> Vec<Group> {
    let k = alg.name();
    let last = if alg.is_associative() { "associative" } else { "associator-witness" };
    vec![Group::new(
        format!("normed.{k}"),
        "§2.1",
        labels(&["norm-multiplicative", "conj-antiautomorphism", "alternative", last]),
        move |rng| {
            let pairs: Vec<(NormedElement, NormedElement)> =
                (0..100).map(|_| (NormedElement::sample(alg, rng), NormedElement::sample(alg, rng))).collect();
            let bad_norm = pairs.iter().find(|(a, b)| (a * b).norm_sq() != a.norm_sq() * b.norm_sq());
            let bad_conj = pairs.iter().find(|(a, b)| (a * b).conj() != &b.conj() * &a.conj());
            let bad_alt = pairs.iter().find(|(a, b)| &(a * a) * b != a * &(a * b) || &(a * b) * b != a * &(b * b));
            let mut out = vec![
                Check::truth("norm-multiplicative", bad_norm.is_none(), || format!("{bad_norm:?}")),
                Check::truth("conj-antiautomorphism", bad_conj.is_none(), || format!("{bad_conj:?}")),
                Check::truth("alternative", bad_alt.is_none(), || format!("{bad_alt:?}")),
            ];
            if alg.is_associative() {
                let triples: Vec<[NormedElement; 3]> = (0..30)
                    .map(|_| [NormedElement::sample(alg, rng), NormedElement::sample(alg, rng), NormedElement::sample(alg, rng)])
                    .collect();
                let bad = triples.iter().find(|[a, b, c]| &(a * b) * c != a * &(b * c));
                out.push(Check::truth("associative", bad.is_none(), || format!("{bad:?}")));
            } else {
                let (i, j, k) = octonion_associator_witness();
                let (a, b, c) = (NormedElement::basis(alg, i), NormedElement::basis(alg, j), NormedElement::basis(alg, k));
                let differs = &(&a * &b) * &c != &a * &(&b * &c);
                out.push(Check::truth("associator-witness", differs, || format!("e{i}, e{j}, e{k} associate")));
            }
            Ok(out)
        },
    )]
}

fn clifford_groups(m: usize) -> Vec<Group> {
    vec![Group::new(
        format!("clifford.m{m}"),
        "§3.1",
        labels(&["relation", "ad-roundtrip", "ad-homomorphism", "nu-star"]),
        move |rng| {
            let basis: Vec<_> = (0..2 * m)
                .map(|k| {
                    let mut c = vec![int(0); 2 * m];
                    c[k] = int(1);
                    crate::clifford::WElement::from_coords(&c)
                })
                .collect();
            let ops: Vec<SpinorOp> = basis.iter().map(clifford_op).collect();
            let mut bad = None;
            'outer: for i in 0..2 * m {
                for j in i..2 * m {
                    let lhs = ops[i].anticommutator(&ops[j]);
                    if lhs != SpinorOp::scalar(m, int(-2) * quad_q(&basis[i], &basis[j])) {
                        bad = Some((i, j));
                        break 'outer;
                    }
                }
            }
            let xs: Vec<_> = (0..3).map(|_| sample_so_w(m, rng)).collect();
            let roundtrip = xs.iter().all(|x| ad_of(&ad_inverse(x).unwrap()).unwrap() == *x);
            let hom = ad_inverse(&xs[0].commutator(&xs[1]))? == ad_inverse(&xs[0])?.commutator(&ad_inverse(&xs[1])?);
            Ok(vec![
                Check::truth("relation", bad.is_none(), || format!("basis pair {bad:?}")),
                Check::truth("ad-roundtrip", roundtrip, || format!("{xs:?}")),
                Check::truth("ad-homomorphism", hom, || format!("{:?}, {:?}", xs[0], xs[1])),
                Check::truth("nu-star", operators::nu_star_identity(m), || "ν differs from the signed Hodge star".into()),
            ])
        },
    )]
}

fn lie_groups(alg: Algebra, n: usize) -> Vec<Group> {
    let k = alg.name();
    let mut out = vec![Group::new(format!("lie.{k}"), "§2.2.1", labels(&["dim-sl", "dim-su"]), move |_| {
        let (sl, su) = (sl_basis(alg).len(), su_basis(alg).len());
        let sl_want = match alg {
            Algebra::R => 3,
            Algebra::C => 6,
            Algebra::H => 15,
            Algebra::O => 45,
        };
        Ok(vec![
            Check::truth("dim-sl", sl == sl_want, || format!("dimension {sl}, expected {sl_want}")),
            Check::truth("dim-su", su == su_dim(alg), || format!("dimension {su}, expected {}", su_dim(alg))),
        ])
    })];
    if alg.is_associative() {
        out.push(Group::new(
            format!("lie.{k}.n{n}"),
            "Lemma 2.7",
            labels(&["iota-homomorphism", "iota-injective", "q-hat=m.q-check", "graded-jacobi"]),
            move |rng| {
                let bad = iota_homomorphism_failures(alg, n)?;
                let inj = iota_is_injective(alg, n)?;
                let us = K11Element::basis_all(alg);
                let m = n * alg.dim();
                let mut qbad = None;
                for u in &us {
                    for v in &us {
                        if q_hat(&iota_hom(u, n)?, &iota_hom(v, n)?) != int(m as i64) * q_check(u, v) {
                            qbad = Some((u.clone(), v.clone()));
                        }
                    }
                }
                let basis = sup_basis(alg, true);
                let gram = q_check_gram(alg);
                let mut jbad = None;
                for _ in 0..20 {
                    let idx: Vec<usize> = (0..3).map(|_| rng.gen_range(0..basis.len())).collect();
                    if !graded_jacobi_holds(&basis[idx[0]], &basis[idx[1]], &basis[idx[2]], &gram) {
                        jbad = Some(idx);
                    }
                }
                Ok(vec![
                    Check::truth("iota-homomorphism", bad.is_empty(), || format!("failing basis pairs {bad:?}")),
                    Check::truth("iota-injective", inj, || "kernel is nonzero".into()),
                    Check::truth("q-hat=m.q-check", qbad.is_none(), || format!("{qbad:?}")),
                    Check::truth("graded-jacobi", jbad.is_none(), || format!("basis triple {jbad:?}")),
                ])
            },
        ));
    } else {
        out.push(Group::new(
            "lie.O.n1",
            "Theorem 3.14",
            labels(&["span128", "iota-odd-dim16", "graded-closure"]),
            |_| {
                let span = octonion_span_check();
                let odd = octonion_iota_hom_dim();
                let closure = theorem314_closure();
                Ok(vec![
                    Check::truth("span128", span == 128, || format!("dimension {span}")),
                    Check::truth("iota-odd-dim16", odd == 16, || format!("dimension {odd}")),
                    Check::truth("graded-closure", closure.closed(), || format!("{closure:?}")),
                ])
            },
        ));
    }
    if alg == Algebra::H {
        let mut tau_labels = vec!["homomorphism".to_string()];
        tau_labels.extend(SuHTag::ALL.iter().map(|t| format!("image.{}", t.name())));
        out.push(Group::new("lie.H.tau-star", "Appendix 5.1", tau_labels, |_| {
            let bad = tau_star_homomorphism_failures();
            let mut out = vec![Check::truth("homomorphism", bad.is_empty(), || format!("failing pairs {bad:?}"))];
            for t in SuHTag::ALL {
                let computed = tau_star(t)?;
                let stated = tau_star_stated(t);
                out.push(Check::truth(format!("image.{}", t.name()), computed == stated, || {
                    format!("computed {computed:?}; stated {stated:?}")
                }));
            }
            Ok(out)
        }));
        out.push(Group::new("lie.H.twist", "Example 2.6", labels(&["equivariance"]), |rng| {
            let mut bad = None;
            for _ in 0..3 {
                let (p, q) = (NormedElement::sample_unit(Algebra::H, rng.gen()), NormedElement::sample_unit(Algebra::H, rng.gen()));
                let r = twist_equivariance(&p, &q)?;
                if !r.all() {
                    bad = Some((p, q, r));
                }
            }
            Ok(vec![Check::truth("equivariance", bad.is_none(), || format!("{bad:?}"))])
        }));
    }
    out
}

fn operator_groups(alg: Algebra, n: usize, max_deg: usize) -> Vec<Group> {
    let k = alg.name();
    let m = n * alg.dim();
    let flat = labels(&[
        "d.d=0",
        "dstar.dstar=0",
        "laplacian=-sum-d2",
        "laplacian.commutes-d",
        "laplacian.commutes-dstar",
        "laplacian.y1^2=-2",
        "symbol.laplacian=-|xi|^2",
        "symbol.d=clifford(0,xi)",
        "D_eps2=d",
        "D_eps1=dstar",
        "D_eps1=nu-conjugate-of-D_eps2",
    ]);
    let mut prop36 = labels(&["zero", "constant", "linear-x.eps2"]);
    for deg in 1..=max_deg {
        for s in 0..2 {
            prop36.push(format!("deg{deg}.sample{s}"));
        }
    }
    let pairs = pair_labels(&k11_names(alg));
    let table = table_labels(su_dim(alg), 2 * alg.dim());
    let mut out = vec![
        Group::new(format!("flat.m{m}"), "§3.3", flat, move |_| operators::flat_identities(m)),
        Group::new(format!("prop36.m{m}"), "Prop 3.6", prop36, move |rng| operators::prop36_checks(m, max_deg, rng)),
        Group::new(format!("prop38.{k}.n{n}"), "Prop 3.8", pairs.clone(), move |_| operators::prop38_checks(alg, n)),
    ];
    if alg.is_associative() {
        out.push(Group::new(format!("prop39.{k}.n{n}"), "Prop 3.9", pairs, move |_| operators::prop39_checks(alg, n)));
        out.push(Group::new(format!("theorem310.{k}.n{n}"), "Theorem 3.10", table, move |_| {
            operators::theorem310_checks(alg, n)
        }));
    } else {
        let why = "requires associative K";
        out.push(Group::skipped(format!("prop39.{k}.n{n}"), "Prop 3.9", pairs, why));
        out.push(Group::skipped(format!("theorem310.{k}.n{n}"), "Theorem 3.10", table, why));
    }
    out
}

fn symbol_groups(alg: Algebra, n: usize, max_deg: usize) -> Vec<Group> {
    let k = alg.name();
    let names = ["even", "even'", "odd", "odd'", "center"];
    let mut ls: Vec<String> = Vec::new();
    for i in 0..names.len() {
        for j in i..names.len() {
            ls.push(format!("bracket.{}-{}", names[i], names[j]));
        }
    }
    ls.push("injective".into());
    let mut out = vec![Group::new(format!("symbols.{k}.n{n}"), "Theorem 3.12", ls, move |rng| {
        operators::symbol_hom_checks(alg, n, max_deg, rng)
    })];
    if alg == Algebra::O {
        out.push(Group::new("symbols.O.n1.graded", "Theorem 3.14", labels(&["odd128"]), |rng| {
            Ok(vec![operators::octonion_odd_symbol_check(rng, 4)?])
        }));
    }
    out
}

fn kahler_groups(n: usize) -> Vec<Group> {
    let mut gens = labels(&[
        "J.valid",
        "rho_L(1)=omega",
        "rho_L=omega-wedge",
        "rho_Lambda=adjoint",
        "rho_H=[rho_L,rho_Lambda]",
        "rho_h=(m/2-p)",
    ]);
    gens.extend(labels(&["sl2.[L,Lambda]", "sl2.[L,H]", "sl2.[Lambda,H]"]));
    let dolbeault = labels(&[
        "del(zbar1)=0",
        "delbar(zbar1)=dzbar1",
        "d=del+delbar",
        "D_eps2=d",
        "D_ieps2=i(delbar-del)",
        "D_eps1=del*+delbar*",
        "D_eps1=dstar",
        "D_ieps1=i(delbar*-del*)",
        "hermitian.D_ieps1=i(del*-delbar*)",
        "{D_eps1,D_eps2}=laplacian",
        "{D_ieps1,D_ieps2}=laplacian",
    ]);
    vec![
        Group::new(format!("kahler.C.n{n}"), "Appendix 5.3", gens, move |_| holonomy::lefschetz_generators(n)),
        Group::new(format!("dolbeault.C.n{n}"), "Appendix 5.3", dolbeault, move |_| holonomy::dolbeault_check(n)),
    ]
}

fn hyperkahler_groups(n: usize) -> Vec<Group> {
    let mut ls = Vec::new();
    for s in 1..=3 {
        ls.push(format!("J{s}.valid"));
        ls.push(format!("rho_L{s}(1)=omega{s}"));
        ls.push(format!("rho_L{s}=omega{s}-wedge"));
        ls.push(format!("rho_Lambda{s}=adjoint"));
        ls.push(format!("{{D_J{s}eps1,D_J{s}eps2}}=laplacian"));
    }
    ls.push("J2.J1=J3".into());
    ls.push("closure-dim=10".into());
    ls.extend(table_labels(10, 8).into_iter().map(|l| format!("table.{l}")));
    vec![Group::new(format!("hyperkahler.H.n{n}"), "Appendix 5.3", ls, move |_| holonomy::hyperkahler_generators(n))]
}

fn semiflat_groups(alg: Algebra, n: usize) -> Vec<Group> {
    let dim = if alg == Algebra::C { 6 } else { 15 };
    let mut ls = vec![
        "isometry.Q=g(x)q'".to_string(),
        "q'=q-check".into(),
        format!("dim={dim}"),
        "contains-iota-su_K(1,1)".into(),
        "image-closed".into(),
        "commutes-with-psi4(u_K'(n))".into(),
    ];
    if alg == Algebra::C {
        ls.push("so(2,2)=sl2+sl2".into());
    }
    for a in 1..=4 {
        for b in a..=4 {
            ls.push(format!("eps{a}-eps{b}"));
        }
    }
    ls.push("super-table".into());
    vec![Group::new(format!("semiflat.{}.n{n}", alg.name()), "§4", ls, move |_| holonomy::semi_flat_action(alg, n))]
}

fn lefschetz_groups(n: usize) -> Vec<Group> {
    let mut ls = Vec::new();
    for nn in 0..=n {
        for k in 0..=nn {
            ls.push(format!("n{nn}.k{k}"));
        }
    }
    vec![Group::new("lefschetz.torus", "Remark 3.11", ls, move |_| {
        let mut out = Vec::new();
        for nn in 0..=n {
            for k in 0..=nn {
                let ok = holonomy::hard_lefschetz_torus(nn, k)?;
                out.push(Check::truth(format!("n{nn}.k{k}"), ok, || format!("ω^{k}∧ is not an isomorphism on T^{}", 2 * nn)));
            }
        }
        Ok(out)
    })]
}

/// All check groups selected by `config`, in registry order.
pub fn groups(config: &SuiteConfig) -> Vec<Group> {
    let (alg, n, deg) = (config.algebra, config.n, config.max_degree);
    let mut out = Vec::new();
    for s in &config.suites {
        out.extend(match s {
            Suite::Normed => normed_groups(alg),
            Suite::Clifford => clifford_groups(config.m()),
            Suite::Lie => lie_groups(alg, n),
            Suite::Operators => operator_groups(alg, n, deg),
            Suite::Kahler => kahler_groups(n),
            Suite::Hyperkahler => hyperkahler_groups(n),
            Suite::Semiflat => semiflat_groups(alg, n),
            Suite::Symbols => symbol_groups(alg, n, deg),
            Suite::Lefschetz => lefschetz_groups(n),
        });
    }
    out
}

/// Sorted `(id, reference)` pairs for every check the configuration runs.
pub fn list_checks(config: &SuiteConfig) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> =
        groups(config).iter().flat_map(|g| g.ids().into_iter().map(move |id| (id, g.anchor.to_string()))).collect();
    out.sort();
    out
}

pub fn render_list(config: &SuiteConfig) -> String {
    list_checks(config).iter().map(|(id, r)| format!("{id} ({r})\n")).collect()
}

fn run_group(index: usize, group: &Group, seed: u64, timings: bool) -> Vec<CheckResult> {
    let result = |id: String, status, witness, millis| CheckResult {
        id,
        status,
        paper_ref: group.anchor.to_string(),
        witness,
        millis,
    };
    if let Some(reason) = &group.skip {
        return group.ids().into_iter().map(|id| result(id, Status::Skipped, Some(reason.clone()), None)).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let start = Instant::now();
    let produced = (group.run)(&mut rng);
    let millis = timings.then(|| start.elapsed().as_millis() as u64);
    let checks = match produced {
        Ok(c) => c,
        Err(e) => {
            return group.ids().into_iter().map(|id| result(id, Status::Fail, Some(format!("error: {e}")), millis)).collect();
        }
    };
    let mut out = Vec::new();
    for label in &group.labels {
        let id = format!("{}.{label}", group.prefix);
        match checks.iter().find(|c| &c.label == label) {
            Some(c) => {
                let status = if c.holds { Status::Pass } else { Status::Fail };
                out.push(result(id, status, c.witness.clone(), millis));
            }
            None => out.push(result(id, Status::Fail, Some("check was not produced".into()), millis)),
        }
    }
    for c in checks.iter().filter(|c| !group.labels.contains(&c.label)) {
        out.push(result(format!("{}.{}", group.prefix, c.label), Status::Fail, Some("check missing from the registry".into()), millis));
    }
    out
}

/// Runs every selected check; results are sorted by id.
pub fn run(config: &SuiteConfig, executor: Executor, timings: bool) -> Vec<CheckResult> {
    let groups = groups(config);
    let seed = config.seed;
    let mut results: Vec<CheckResult> = match executor {
        #[cfg(feature = "parallel")]
        Executor::Parallel => {
            use rayon::prelude::*;
            groups.par_iter().enumerate().flat_map_iter(|(i, g)| run_group(i, g, seed, timings)).collect()
        }
        _ => groups.iter().enumerate().flat_map(|(i, g)| run_group(i, g, seed, timings)).collect(),
    };
    results.sort_by(|a, b| a.id.cmp(&b.id));
    results
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

pub fn counts(results: &[CheckResult]) -> Counts {
    let mut c = Counts { total: results.len(), ..Counts::default() };
    for r in results {
        match r.status {
            Status::Pass => c.pass += 1,
            Status::Fail => c.fail += 1,
            Status::Skipped => c.skipped += 1,
        }
    }
    c
}

#[derive(Serialize)]
struct Header<'a> {
    tool: &'static str,
    version: &'static str,
    config: &'a SuiteConfig,
    counts: Counts,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    header: Header<'a>,
    checks: &'a [CheckResult],
}

pub fn render_json(config: &SuiteConfig, results: &[CheckResult]) -> String {
    let report = JsonReport {
        header: Header { tool: "superlefschetz", version: VERSION, config, counts: counts(results) },
        checks: results,
    };
    let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
    s.push('\n');
    s
}

pub fn render_text(config: &SuiteConfig, results: &[CheckResult]) -> String {
    let mut s = String::new();
    for r in results {
        s.push_str(&format!("{} {} ({})", r.id, r.status, r.paper_ref));
        if let Some(ms) = r.millis {
            s.push_str(&format!(" [{ms} ms]"));
        }
        s.push('\n');
        if r.status == Status::Fail {
            if let Some(w) = &r.witness {
                s.push_str(&format!("    witness: {w}\n"));
            }
        }
    }
    let c = counts(results);
    s.push_str(&format!(
        "# algebra={} n={} seed={}: {} checks, {} pass, {} fail, {} skipped\n",
        config.algebra, config.n, config.seed, c.total, c.pass, c.fail, c.skipped
    ));
    s
}

pub fn render(config: &SuiteConfig, results: &[CheckResult]) -> String {
    match config.format {
        Format::Text => render_text(config, results),
        Format::Json => render_json(config, results),
    }
}

/// `0` if nothing failed, `1` otherwise.
pub fn exit_code(results: &[CheckResult]) -> i32 {
    if results.iter().any(|r| r.status == Status::Fail) {
        1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(alg: Algebra, n: usize, suites: &[Suite]) -> SuiteConfig {
        SuiteConfig::new(alg, n, suites, 7, 2, Format::Json).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(matches!(SuiteConfig::new(Algebra::O, 2, &[], 0, 2, Format::Text), Err(Error::Config(_))));
        assert!(matches!(SuiteConfig::new(Algebra::R, 0, &[], 0, 2, Format::Text), Err(Error::Config(_))));
        assert!(SuiteConfig::new(Algebra::H, 3, &[], 0, 2, Format::Text).is_err());
        assert!(SuiteConfig::new(Algebra::R, 1, &[Suite::Kahler], 0, 2, Format::Text).is_err());
        assert!(SuiteConfig::new(Algebra::C, 1, &[Suite::Hyperkahler], 0, 2, Format::Text).is_err());
        assert!(SuiteConfig::new(Algebra::R, 1, &[Suite::Semiflat], 0, 2, Format::Text).is_err());
        assert!(SuiteConfig::new(Algebra::R, 1, &[], 0, 9, Format::Text).is_err());
        let c = cfg(Algebra::C, 1, &[]);
        assert!(c.suites.contains(&Suite::Kahler) && !c.suites.contains(&Suite::Hyperkahler));
    }

    #[test]
    fn listing_contains_named_pair() {
        let list = list_checks(&cfg(Algebra::C, 1, &[Suite::Operators]));
        assert!(list.iter().any(|(id, r)| id == "prop39.C.n1.eps1-eps2" && r == "Prop 3.9"));
    }

    #[test]
    fn listing_is_sorted_and_unique() {
        let list = list_checks(&cfg(Algebra::H, 1, &[]));
        let mut sorted = list.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(list, sorted);
        assert!(list.iter().all(|(_, r)| !r.is_empty()));
    }

    #[test]
    fn registry_size_for_real_plane() {
        assert!(list_checks(&cfg(Algebra::R, 2, &[])).len() >= 20);
    }

    #[test]
    fn run_matches_listing() {
        let c = cfg(Algebra::C, 1, &[Suite::Operators, Suite::Kahler, Suite::Lefschetz, Suite::Normed]);
        let results = run(&c, Executor::Sequential, false);
        let ids: Vec<&str> = results.iter().map(|r| r.id.as_str()).collect();
        let listed: Vec<String> = list_checks(&c).into_iter().map(|(id, _)| id).collect();
        assert_eq!(ids, listed.iter().map(String::as_str).collect::<Vec<_>>());
        assert_eq!(exit_code(&results), 0, "{:?}", results.iter().filter(|r| r.status != Status::Pass).collect::<Vec<_>>());
    }

    #[test]
    fn lefschetz_suite_has_three_checks_for_n1() {
        let c = cfg(Algebra::C, 1, &[Suite::Lefschetz]);
        let results = run(&c, Executor::Sequential, false);
        assert_eq!(results.len(), 3);
        assert!(results.iter().all(|r| r.status == Status::Pass));
    }

    #[test]
    fn octonion_operators_skip_associative_checks() {
        let list = list_checks(&cfg(Algebra::O, 1, &[Suite::Operators]));
        assert!(list.iter().any(|(id, _)| id.starts_with("prop39.O.n1.")));
    }
}
