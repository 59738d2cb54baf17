use std::fmt::{Display, Write};

use num_bigint::BigUint;
use ratball::contfrac::{Fraction, HJExpansion};
use ratball::lattice::AmbientCount;
use ratball::markov::{BallSpec, MarkovTriple, SymplecticVerdict};
use ratball::obstruction::{ClassificationReport, ExampleB31Report, ObstructionReport, Verdict};
use ratball::plumbing::{PlumbingChain, SimpleEmbeddingCertificate};
use ratball::SearchStats;
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct CharReport {
    pub triple: MarkovTriple,
    #[serde(with = "ratball::decimal")]
    pub u: BigUint,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct ClassifyReport {
    pub ball: BallSpec,
    pub verdict: SymplecticVerdict,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct LensSpace {
    #[serde(with = "ratball::decimal")]
    pub p: BigUint,
    #[serde(with = "ratball::decimal")]
    pub q: BigUint,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct FibReport {
    #[serde(with = "ratball::decimal")]
    pub n: u64,
    pub short: HJExpansion,
    pub short_value: Fraction,
    pub long: HJExpansion,
    pub long_value: Fraction,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct LatticeReport {
    pub classification: ClassificationReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<AmbientCount>>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct ReduceReport {
    pub start: PlumbingChain,
    pub final_chain: PlumbingChain,
    #[serde(with = "ratball::decimal")]
    pub blowdowns: usize,
}

pub fn lines<T: Display>(items: &[T]) -> String {
    items.iter().map(|x| format!("{x}\n")).collect()
}

fn indent(text: impl Display) -> String {
    text.to_string().lines().map(|l| format!("    {l}\n")).collect()
}

fn join<T: Display>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn classes(n: usize) -> String {
    if n == 1 {
        "1 class".into()
    } else {
        format!("{n} classes")
    }
}

pub fn stats_line(s: &SearchStats) -> String {
    format!("{} nodes, {} leaves", s.nodes, s.leaves)
}

pub fn classify_text(r: &ClassifyReport) -> String {
    match &r.verdict.witness {
        Some(t) if r.verdict.symplectic => format!("{}: symplectic, Markov triple {t}", r.ball),
        _ => format!("{}: not symplectic", r.ball),
    }
}

pub fn fib_text(r: &FibReport) -> String {
    format!("{} = {}\n{} = {}", r.short_value, r.short, r.long_value, r.long)
}

pub fn certificate_text(c: &SimpleEmbeddingCertificate) -> String {
    format!("{} -> {} after {} blowdowns, b2 = {}", c.start, c.final_chain, c.blowdowns, c.b2)
}

pub fn classification_text(r: &ClassificationReport) -> String {
    let weights: Vec<String> = r.weights.iter().map(ToString::to_string).collect();
    let mut s = format!("Λ({}) in Z^{}: {}\n", weights.join(","), r.ambient, classes(r.classes.len()));
    for (i, c) in r.classes.iter().enumerate() {
        let _ = write!(s, "class {}: support {}, complement rank {}", i + 1, c.support, c.complement_rank);
        if let Some(n) = c.generator_norm {
            let _ = write!(s, ", generator norm {n}");
        }
        if c.complement_rank > 0 && !c.complement_has_unit_vectors {
            s.push_str(", no unit vectors");
        }
        s.push('\n');
        s.push_str(&indent(&c.representative));
    }
    s
}

pub fn lattice_text(r: &LatticeReport) -> String {
    let mut s = classification_text(&r.classification);
    for c in r.counts.iter().flatten() {
        let _ = writeln!(s, "Z^{}: {}", c.ambient, classes(c.classes));
    }
    s
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Obstructed => "OBSTRUCTED".into(),
        Verdict::NotObstructed => "NOT_OBSTRUCTED".into(),
        Verdict::Inconclusive(kind) => format!("INCONCLUSIVE ({kind} limit)"),
    }
}

pub fn obstruction_text(r: &ObstructionReport) -> String {
    let p = &r.problem;
    let t = &r.tally;
    let mut s = String::new();
    let _ = writeln!(s, "balls: {}", join(&p.balls));
    let _ = writeln!(s, "generator norm: {}", p.m_norm);
    let _ = writeln!(s, "plumbings: {}", join(&p.plumbings));
    let _ = writeln!(s, "ambient: Z^{}", p.ambient);
    let _ = writeln!(s, "verdict: {}", verdict_text(&r.verdict));
    let _ = writeln!(s, "exhaustive: {}", if r.exhaustive { "yes" } else { "no" });
    let _ = writeln!(s, "search: {}", stats_line(&r.stats));
    let _ = writeln!(
        s,
        "classes examined: {}; no extension {}, not primitive {}, unit pairing with M {}, unit pairing with C {}",
        t.classes_examined, t.no_extension, t.not_primitive, t.unit_pairing_m, t.unit_pairing_c
    );
    for (i, w) in r.witnesses.iter().enumerate() {
        let _ = writeln!(s, "witness {}:", i + 1);
        s.push_str(&indent(&w.embedding));
    }
    s
}

pub fn b31_text(r: &ExampleB31Report) -> String {
    let mut s = format!("Λ(9) ⊕ Λ(2,2,2,3) in Z^5: {}\n", classes(r.classes.len()));
    for (i, (a, u)) in r.classes.iter().zip(&r.unit_pairing).enumerate() {
        let _ = writeln!(s, "class {}:", i + 1);
        s.push_str(&indent(a));
        let miss = |v: Vec<usize>| {
            if v.is_empty() {
                "none".to_string()
            } else {
                join(&v.iter().map(|j| format!("e{j}")).collect::<Vec<_>>())
            }
        };
        let _ = writeln!(s, "    orthogonal to M: {}", miss(u.missing_m()));
        let _ = writeln!(s, "    orthogonal to C: {}", miss(u.missing_c()));
    }
    s.push_str(&obstruction_text(&r.obstruction));
    s
}
