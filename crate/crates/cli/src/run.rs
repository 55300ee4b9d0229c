//! Command dispatch: each command turns a fixture into report entries.

use crate::fixture::{Fixture, FixtureKind};
use crate::report::{Entry, Report, Status};
use algebroid_core::coeffring::{Polynomial, Q};
use algebroid_core::complexes::{
    build_algebroid_complex, build_canonical_chain_complex, build_nambu_cochain_complex, check_delta_identities,
    check_homology_orientation_independence, check_pi_subcomplex, check_rescaling_betti, check_restriction_iso,
    duality_check, leibniz_cohomology, leibniz_complex, BettiTable, LeibnizAlgebra, StratifiedComplex,
};
use algebroid_core::exterior::{mask_indices, AForm, Component, MultiVector};
use algebroid_core::modular::{
    check_bracket_divergence, check_cocycle, check_modular_map, check_orientation_change, check_pushforward_schouten,
    modular_multisection, solve_nullity, ModularData, Nullity, NullityOutcome, OrientationForm,
};
use algebroid_core::nambu::{
    check_leibniz_axioms, sample_forms, sample_multivectors, DorfmanAlgebroid, NambuStructure, SampleLevel,
};
use algebroid_core::report::CheckReport;
use algebroid_core::Error;
use serde::Serialize;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Axioms,
    Nambu,
    Leibniz,
    Modular,
    Nullity,
    Cohomology,
    Homology,
    Duality,
    All,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Axioms => "axioms",
            Command::Nambu => "nambu",
            Command::Leibniz => "leibniz",
            Command::Modular => "modular",
            Command::Nullity => "nullity",
            Command::Cohomology => "cohomology",
            Command::Homology => "homology",
            Command::Duality => "duality",
            Command::All => "all",
        }
    }
}

/// Overrides for the fixture's own settings.
#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub max_stratum: Option<i64>,
    pub degree_bound: Option<u32>,
    pub samples: Option<SampleLevel>,
    pub allow_exp: bool,
    pub timings: bool,
}

/// Errors that mean a check does not apply to the fixture rather than that it failed.
fn is_precondition(e: &Error) -> bool {
    matches!(
        e,
        Error::NotRegular
            | Error::NotWeightHomogeneous(_)
            | Error::SpanningHypothesisFails
            | Error::SingularPoint
            | Error::ModularClassNotNull
    )
}

fn error_entry(name: &str, e: &Error) -> Entry {
    if is_precondition(e) {
        Entry::skip(name, e.to_string())
    } else {
        Entry::fail(name, e.to_string())
    }
}

fn components(x: &MultiVector, f: &Fixture) -> Vec<Component> {
    x.components(f.alg.ctx())
}

fn betti_detail(t: &BettiTable) -> String {
    let tot: Vec<String> = t.totals().iter().map(usize::to_string).collect();
    format!("total dims ({})", tot.join(", "))
}

fn composition_entry(name: &str, c: &StratifiedComplex) -> Entry {
    match c.check_composition_zero() {
        Ok(()) => Entry::pass(name, "d∘d = 0 on every stratum"),
        Err(w) => Entry::fail(name, format!("d∘d ≠ 0 at {w}")),
    }
}

/// Deterministic evaluation points for pointwise checks.
fn sample_points(p: usize) -> Vec<Vec<Q>> {
    let q = |n: i64, d: i64| Q::new(n.into(), d.into());
    vec![
        vec![q(0, 1); p],
        vec![q(1, 1); p],
        (0..p).map(|i| q(i as i64 + 1, 1)).collect(),
        (0..p).map(|i| q(if i % 2 == 0 { -1 } else { 3 }, i as i64 + 2)).collect(),
    ]
}

pub struct Runner<'a> {
    f: &'a Fixture,
    level: SampleLevel,
    degree_bound: u32,
    max_stratum: i64,
    allow_exp: bool,
    timings: bool,
    nambu_ok: Option<bool>,
    modular: Option<std::result::Result<ModularData, Error>>,
}

impl<'a> Runner<'a> {
    pub fn new(f: &'a Fixture, flags: &Flags) -> Self {
        Runner {
            f,
            level: flags.samples.unwrap_or(f.file.samples.level),
            degree_bound: flags.degree_bound.unwrap_or(f.file.bounds.degree_bound),
            max_stratum: flags.max_stratum.unwrap_or(f.file.bounds.max_stratum),
            allow_exp: flags.allow_exp,
            timings: flags.timings,
            nambu_ok: None,
            modular: None,
        }
    }

    fn timed(&self, out: &mut Vec<Entry>, run: impl FnOnce() -> Vec<Entry>) {
        let t = Instant::now();
        let mut es = run();
        if self.timings {
            let ms = t.elapsed().as_millis() as u64;
            for e in &mut es {
                e.timing_ms = Some(ms);
            }
        }
        out.extend(es);
    }

    /// (n−1)-form samples: generated ones plus explicit fixture forms of that degree.
    fn top_samples(&self, n: &NambuStructure) -> Vec<AForm> {
        let mut s = n.default_samples(self.level);
        s.extend(self.f.extra_samples.iter().filter(|a| a.degree() + 1 == n.order()).cloned());
        s
    }

    /// Samples of every degree below n.
    fn graded_samples(&self, n: &NambuStructure) -> Vec<AForm> {
        let mut s: Vec<AForm> =
            (0..n.order()).flat_map(|k| sample_forms(n.rank(), self.f.alg.base_dim(), k, self.level)).collect();
        s.extend(self.f.extra_samples.iter().filter(|a| a.degree() < n.order()).cloned());
        s
    }

    /// Gate for the complexes: the Nambu condition on basis and linear samples.
    fn nambu_ok(&mut self, n: &NambuStructure) -> bool {
        *self.nambu_ok.get_or_insert_with(|| {
            n.check_nambu_condition(&n.default_samples(SampleLevel::Linear))
                .map(|r| r.passed())
                .unwrap_or(false)
        })
    }

    fn modular_data(&mut self, n: &NambuStructure, nu: &OrientationForm) -> std::result::Result<ModularData, Error> {
        self.modular.get_or_insert_with(|| modular_multisection(n, nu)).clone()
    }

    pub fn run(&mut self, cmd: Command) -> Report {
        let mut entries = Vec::new();
        let cmds: Vec<Command> = match cmd {
            Command::All => vec![
                Command::Axioms,
                Command::Nambu,
                Command::Leibniz,
                Command::Modular,
                Command::Nullity,
                Command::Cohomology,
                Command::Homology,
                Command::Duality,
            ],
            c => vec![c],
        };
        for c in cmds {
            entries.extend(self.section(c));
        }
        Report { fixture: self.f.file.name.clone(), command: cmd.name().into(), entries }
    }

    fn section(&mut self, cmd: Command) -> Vec<Entry> {
        let needs_nambu = !matches!(cmd, Command::Axioms | Command::Leibniz | Command::Cohomology);
        if needs_nambu && self.f.nambu.is_none() {
            return vec![Entry::skip(cmd.name(), "fixture has no Nambu structure")];
        }
        match cmd {
            Command::Axioms => self.axioms(),
            Command::Nambu => self.nambu(),
            Command::Leibniz => self.leibniz(),
            Command::Modular => self.modular(),
            Command::Nullity => self.nullity(),
            Command::Cohomology => self.cohomology(),
            Command::Homology => self.homology(),
            Command::Duality => self.duality(),
            Command::All => unreachable!("expanded by run"),
        }
    }

    fn axioms(&mut self) -> Vec<Entry> {
        let f = self.f;
        let level = self.level;
        let mut out = Vec::new();
        self.timed(&mut out, || {
            let r = f.alg.check_lie_axioms();
            let mut e = if r.all_ok() {
                Entry::pass("lie_axioms", "Jacobi, anchor morphism and Leibniz rule hold on the frame")
            } else {
                Entry::fail("lie_axioms", "axioms fail on the frame")
            };
            e.witnesses = r
                .counterexamples
                .iter()
                .map(|c| algebroid_core::report::Witness {
                    label: format!("{} at {:?}", c.axiom, c.indices),
                    residual: c.residual.clone(),
                })
                .collect();
            vec![e]
        });
        self.timed(&mut out, || {
            let m = f.alg.rank();
            let mut rep = CheckReport::new("d_squared");
            let mut err = None;
            'outer: for k in 0..m {
                for a in sample_forms(m, f.alg.base_dim(), k, level) {
                    match f.alg.d_a(&a).and_then(|d| f.alg.d_a(&d)) {
                        Ok(dd) => {
                            if !rep.record(dd.is_zero(), || a.format(f.alg.ctx()), || dd.format(f.alg.ctx())) {
                                break 'outer;
                            }
                        }
                        Err(e) => {
                            err = Some(e);
                            break 'outer;
                        }
                    }
                }
            }
            vec![match err {
                Some(e) => error_entry("d_squared", &e),
                None => Entry::check(rep),
            }]
        });
        out
    }

    fn nambu(&mut self) -> Vec<Entry> {
        let f = self.f;
        let n = f.nambu.as_ref().expect("checked by section");
        let samples = self.top_samples(n);
        let bound = self.degree_bound;
        let mut out = Vec::new();
        self.timed(&mut out, || vec![wrap("nambu_condition", n.check_nambu_condition(&samples))]);
        self.timed(&mut out, || vec![wrap("fundamental_identity", n.check_fundamental_identity(bound))]);
        self.timed(&mut out, || {
            let pts = sample_points(f.alg.base_dim());
            let mut es = Vec::new();
            match n.regularity_certificate() {
                Some(mask) => {
                    let idx: Vec<String> = mask_indices(mask).iter().map(|i| (i + 1).to_string()).collect();
                    es.push(Entry::info("regularity", format!("coefficient on e_{{{}}} is a nonzero constant", idx.join(","))));
                }
                None => es.push(Entry::info("regularity", "no constant coefficient certifies regularity")),
            }
            match n.regularity_report(&pts) {
                Ok(r) => es.push(Entry::info("regularity_at_points", "").with_data(r)),
                Err(e) => es.push(error_entry("regularity_at_points", &e)),
            }
            #[derive(Serialize)]
            struct DPoint {
                point: Vec<String>,
                rank: usize,
                basis: Vec<Vec<Component>>,
            }
            let mut dps = Vec::new();
            let mut skipped = Vec::new();
            for pt in &pts {
                let label: Vec<String> = pt.iter().map(algebroid_core::coeffring::format_rational).collect();
                match n.distribution_d(pt) {
                    Ok(b) => dps.push(DPoint {
                        point: label,
                        rank: b.len(),
                        basis: b.iter().map(|y| components(y, f)).collect(),
                    }),
                    Err(e) => skipped.push(format!("({}): {e}", label.join(", "))),
                }
            }
            let ranks: Vec<String> = dps.iter().map(|d| d.rank.to_string()).collect();
            let mut e = Entry::info("distribution", format!("rank of D at sample points: {}", ranks.join(", "))).with_data(dps);
            e.notes = skipped;
            es.push(e);
            es
        });
        out
    }

    fn leibniz(&mut self) -> Vec<Entry> {
        let f = self.f;
        let mut out = Vec::new();
        match (f.file.kind, &f.nambu) {
            (FixtureKind::Dorfman, _) => {
                let d = DorfmanAlgebroid { base: f.alg.clone() };
                let samples = d.default_samples(self.level);
                self.timed(&mut out, || wrap_many("leibniz_axioms", check_leibniz_axioms(&d, &samples)));
            }
            (FixtureKind::Nambu, Some(n)) => {
                let samples = self.top_samples(n);
                self.timed(&mut out, || wrap_many("leibniz_axioms", check_leibniz_axioms(&n.view(), &samples)));
                self.timed(&mut out, || vec![wrap("morphism", n.check_morphism(&samples))]);
            }
            (FixtureKind::Nambu, None) => out.push(Entry::skip("leibniz", "fixture has no Nambu structure")),
        }
        out
    }

    fn orientation(&self) -> Option<OrientationForm> {
        self.f.nu.clone()
    }

    fn modular(&mut self) -> Vec<Entry> {
        let f = self.f;
        let n = f.nambu.as_ref().expect("checked by section");
        let Some(nu) = self.orientation() else {
            return vec![Entry::skip("modular", "fixture declares no orientation form")];
        };
        let mut out = Vec::new();
        let t = Instant::now();
        let md = match self.modular_data(n, &nu) {
            Ok(md) => md,
            Err(e) => return vec![error_entry("modular_multisection", &e)],
        };
        let mut e = Entry::info("modular_multisection", format!("M̃ = {}", md.m_tilde.format(f.alg.ctx())))
            .with_data(components(&md.m_tilde, f));
        if self.timings {
            e.timing_ms = Some(t.elapsed().as_millis() as u64);
        }
        out.push(e);
        out.push(Entry::check(md.defining_relation.clone()));
        let samples = self.top_samples(n);
        let graded = self.graded_samples(n);
        let bound = self.degree_bound;
        self.timed(&mut out, || vec![wrap("cocycle", check_cocycle(&md, n, &samples))]);
        if f.alg.base_dim() > 0 {
            self.timed(&mut out, || {
                vec![wrap("orientation_change", check_orientation_change(n, &nu, &Polynomial::var(0)))
                    .with_note("g = first coordinate")]
            });
        }
        self.timed(&mut out, || vec![wrap("pushforward_schouten", check_pushforward_schouten(n, &samples))]);
        self.timed(&mut out, || vec![wrap("bracket_divergence", check_bracket_divergence(n, &samples))]);
        self.timed(&mut out, || wrap_many("modular_map", check_modular_map(n, &nu)));
        self.timed(&mut out, || match check_pi_subcomplex(n, &nu, &md, &graded, bound) {
            Ok(r) => {
                let member = match &r.preimage {
                    Some(theta) => Entry::pass("modular_in_pi_image", format!("M̃ = Π_1(θ) with θ = {theta}")),
                    None if md.m_tilde.is_zero() => Entry::pass("modular_in_pi_image", "M̃ = 0"),
                    None => Entry::info(
                        "modular_in_pi_image",
                        format!("no polynomial θ of degree ≤ {bound} with Π_1(θ) = M̃"),
                    ),
                };
                vec![Entry::check(r.formula), member]
            }
            Err(e) => vec![error_entry("pi_subcomplex_formula", &e)],
        });
        out
    }

    fn nullity_result(&mut self, n: &NambuStructure, nu: &OrientationForm) -> std::result::Result<Nullity, Error> {
        let md = self.modular_data(n, nu)?;
        solve_nullity(&md, n, self.degree_bound, self.allow_exp)
    }

    fn nullity(&mut self) -> Vec<Entry> {
        let n = self.f.nambu.as_ref().expect("checked by section");
        let Some(nu) = self.orientation() else {
            return vec![Entry::skip("nullity", "fixture declares no orientation form")];
        };
        let t = Instant::now();
        let mut e = match self.nullity_result(n, &nu) {
            Ok(r) => match &r.outcome {
                NullityOutcome::Found { potential, pi1_identity } => {
                    let mut e = Entry::pass("nullity", format!("modular class is null with potential g = {potential}"));
                    if !pi1_identity {
                        e = Entry::fail("nullity", format!("g = {potential} found but M̃ ≠ (−1)^(n−1)Π_1(d_A g)"));
                    }
                    e.with_data(&r.outcome)
                }
                NullityOutcome::NotFoundWithinBound { degree_bound } => Entry::info(
                    "nullity",
                    format!("no potential of degree ≤ {degree_bound}; the class is not shown to be null"),
                )
                .with_data(&r.outcome),
            },
            Err(e) => error_entry("nullity", &e),
        };
        if self.timings {
            e.timing_ms = Some(t.elapsed().as_millis() as u64);
        }
        vec![e]
    }

    fn cohomology(&mut self) -> Vec<Entry> {
        let f = self.f;
        let max = self.max_stratum;
        let mut out = Vec::new();
        self.timed(&mut out, || match build_algebroid_complex(&f.alg, max) {
            Ok(c) => {
                let b = c.betti();
                vec![
                    composition_entry("algebroid_complex", &c),
                    Entry::info("algebroid_cohomology", betti_detail(&b)).with_data(b),
                ]
            }
            Err(e) => vec![error_entry("algebroid_cohomology", &e)],
        });
        if f.alg.base_dim() == 0 {
            self.timed(&mut out, || self.point_leibniz_cohomology());
        }
        let Some(n) = f.nambu.as_ref() else {
            return out;
        };
        if !self.nambu_ok(n) {
            out.push(Entry::skip("nambu_cohomology", "Π is not a Nambu structure"));
            return out;
        }
        self.timed(&mut out, || match build_nambu_cochain_complex(n, max) {
            Ok(c) => {
                let b = c.complex.betti();
                vec![
                    composition_entry("nambu_complex", &c.complex),
                    Entry::info("nambu_cohomology", betti_detail(&b)).with_data(b),
                ]
            }
            Err(e) => vec![error_entry("nambu_cohomology", &e)],
        });
        let samples = self.graded_samples(n);
        self.timed(&mut out, || wrap_many("restriction", check_restriction_iso(n, &samples)));
        out
    }

    /// Leibniz cohomology of the fibre algebra with trivial coefficients.
    fn point_leibniz_cohomology(&self) -> Vec<Entry> {
        let alg = &self.f.alg;
        let m = alg.rank();
        let mut table = vec![vec![vec![Q::from_integer(0.into()); m]; m]; m];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, col) in row.iter_mut().enumerate() {
                for (k, c) in col.iter_mut().enumerate() {
                    match alg.structure(i, j).get(1 << k).constant_value() {
                        Some(v) => *c = v,
                        None => return vec![Entry::skip("leibniz_cohomology", "structure functions are not constant")],
                    }
                }
            }
        }
        let l = match LeibnizAlgebra::new(table) {
            Ok(l) => l,
            Err(e) => return vec![error_entry("leibniz_cohomology", &e)],
        };
        let mut out = Vec::new();
        match leibniz_complex(&l, &l.adjoint_rep(), 2) {
            Ok(c) => out.push(composition_entry("leibniz_complex_adjoint", &c)),
            Err(e) => out.push(error_entry("leibniz_complex_adjoint", &e)),
        }
        match leibniz_cohomology(&l, &l.trivial_rep(), 3) {
            Ok(b) => out.push(
                Entry::info("leibniz_cohomology", betti_detail(&b))
                    .with_data(b)
                    .with_note("trivial coefficients, degrees 0..=3"),
            ),
            Err(e) => out.push(error_entry("leibniz_cohomology", &e)),
        }
        out
    }

    fn homology(&mut self) -> Vec<Entry> {
        let f = self.f;
        let n = f.nambu.as_ref().expect("checked by section");
        let Some(nu) = self.orientation() else {
            return vec![Entry::skip("homology", "fixture declares no orientation form")];
        };
        let max = self.max_stratum;
        let level = self.level;
        let mut out = Vec::new();
        self.timed(&mut out, || {
            let m = f.alg.rank();
            let p = f.alg.base_dim();
            let ps: Vec<MultiVector> = (1..=m).flat_map(|k| sample_multivectors(m, p, k, level)).collect();
            let xs = sample_multivectors(m, p, 1, level);
            let alphas: Vec<AForm> = (0..m).flat_map(|k| sample_forms(m, p, k, level)).collect();
            wrap_many("delta_identities", check_delta_identities(&f.alg, &nu, &ps, &xs, &alphas))
        });
        if f.alg.base_dim() > 0 {
            self.timed(&mut out, || {
                let ps: Vec<MultiVector> =
                    (1..=f.alg.rank()).flat_map(|k| sample_multivectors(f.alg.rank(), f.alg.base_dim(), k, level)).collect();
                vec![wrap(
                    "orientation_intertwining",
                    check_homology_orientation_independence(&f.alg, &nu, &Polynomial::var(0), &ps),
                )
                .with_note("g = first coordinate")]
            });
        }
        if !self.nambu_ok(n) {
            out.push(Entry::skip("canonical_homology", "Π is not a Nambu structure"));
            return out;
        }
        self.timed(&mut out, || match build_canonical_chain_complex(n, &nu, max) {
            Ok(c) => {
                let b = c.betti();
                vec![
                    composition_entry("canonical_complex", &c),
                    Entry::info("canonical_homology", betti_detail(&b)).with_data(b),
                ]
            }
            Err(e) => vec![error_entry("canonical_homology", &e)],
        });
        self.timed(&mut out, || {
            vec![wrap("rescaling_betti", check_rescaling_betti(n, &nu, &Q::from_integer(2.into()), max))
                .with_note("ν rescaled by 2")]
        });
        out
    }

    fn duality(&mut self) -> Vec<Entry> {
        let n = self.f.nambu.as_ref().expect("checked by section");
        let Some(nu) = self.orientation() else {
            return vec![Entry::skip("duality", "fixture declares no orientation form")];
        };
        if !self.nambu_ok(n) {
            return vec![Entry::skip("duality", "Π is not a Nambu structure")];
        }
        let t = Instant::now();
        let nullity = match self.nullity_result(n, &nu) {
            Ok(r) => r,
            Err(e) => return vec![error_entry("duality", &e)],
        };
        let samples = self.graded_samples(n);
        let mut out = match duality_check(n, &nu, &nullity, self.max_stratum, &samples) {
            Ok(r) => {
                let mut es = vec![Entry::check(r.chain_map)];
                match r.dimensions {
                    Some(d) => es.push(Entry::check(d).with_data(&r.rows)),
                    None => es.push(Entry::skip("duality_dimensions", r.notes.join("; "))),
                }
                if let Some(i) = r.injectivity {
                    es.push(Entry::check(i));
                }
                es
            }
            Err(e) => vec![error_entry("duality", &e)],
        };
        if self.timings {
            let ms = t.elapsed().as_millis() as u64;
            for e in &mut out {
                e.timing_ms = Some(ms);
            }
        }
        out
    }
}

fn wrap(name: &str, r: algebroid_core::Result<CheckReport>) -> Entry {
    match r {
        Ok(r) => Entry::check(r),
        Err(e) => error_entry(name, &e),
    }
}

fn wrap_many(name: &str, r: algebroid_core::Result<Vec<CheckReport>>) -> Vec<Entry> {
    match r {
        Ok(rs) => rs.into_iter().map(Entry::check).collect(),
        Err(e) => vec![error_entry(name, &e)],
    }
}

impl Entry {
    fn with_note(mut self, n: &str) -> Entry {
        self.notes.push(n.into());
        self
    }
}

/// Runs one command; the report's failure flag decides the exit code.
pub fn run(cmd: Command, f: &Fixture, flags: &Flags) -> Report {
    Runner::new(f, flags).run(cmd)
}

pub fn exit_code(r: &Report) -> i32 {
    if r.entries.iter().any(|e| e.status == Status::Fail) {
        1
    } else {
        0
    }
}
