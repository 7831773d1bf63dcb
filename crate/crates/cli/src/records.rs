//! Flat renderings of the library reports for CSV and text output.

use qlag::checks::{
    BoundsRecord, CommonZeroKind, CommonZeroReport, InterlacingReport, MomentReport, Verdict,
};
use qlag::table::ReferenceRow;
use qlag::zeros::ZeroList;
use qlag::PrecReal;
use serde::Serialize;

use crate::output::Record;

fn sig(x: &PrecReal, digits: usize) -> String {
    x.to_sig_string(digits)
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(ToString::to_string).unwrap_or_default()
}

#[derive(Serialize)]
pub struct EvalRecord {
    pub q: PrecReal,
    pub delta: PrecReal,
    pub shift: u8,
    pub n: usize,
    pub z: PrecReal,
    pub recurrence: PrecReal,
    pub hypergeometric: Option<PrecReal>,
    /// `|recurrence - hypergeometric| / max(|recurrence|, |hypergeometric|)`.
    pub rel_diff: Option<PrecReal>,
    pub note: Option<String>,
}

impl Record for EvalRecord {
    fn header(&self) -> Vec<&'static str> {
        vec![
            "q",
            "delta",
            "shift",
            "n",
            "z",
            "recurrence",
            "hypergeometric",
            "rel_diff",
            "note",
        ]
    }

    fn rows(&self, d: usize) -> Vec<Vec<String>> {
        vec![vec![
            self.q.to_exact_string(),
            self.delta.to_exact_string(),
            self.shift.to_string(),
            self.n.to_string(),
            self.z.to_exact_string(),
            sig(&self.recurrence, d),
            self.hypergeometric
                .as_ref()
                .map(|v| sig(v, d))
                .unwrap_or_default(),
            self.rel_diff
                .as_ref()
                .map(|v| sig(v, 3))
                .unwrap_or_default(),
            opt(&self.note),
        ]]
    }

    fn text(&self, d: usize) -> String {
        let mut s = format!(
            "L[{}](delta+{}) q={} delta={} at z={}: recurrence {}",
            self.n,
            self.shift,
            self.q.to_exact_string(),
            self.delta.to_exact_string(),
            self.z.to_exact_string(),
            sig(&self.recurrence, d)
        );
        match (&self.hypergeometric, &self.rel_diff) {
            (Some(h), Some(r)) => {
                s += &format!(", hypergeometric {}, rel diff {}", sig(h, d), sig(r, 3))
            }
            _ => s += &format!(", hypergeometric unavailable ({})", opt(&self.note)),
        }
        s
    }
}

#[derive(Serialize)]
#[serde(transparent)]
pub struct ZerosRecord(pub ZeroList);

impl Record for ZerosRecord {
    fn header(&self) -> Vec<&'static str> {
        vec!["q", "delta", "shift", "n", "index", "zero", "certified_tol"]
    }

    fn rows(&self, d: usize) -> Vec<Vec<String>> {
        let s = &self.0.spec;
        self.0
            .zeros
            .iter()
            .enumerate()
            .map(|(i, z)| {
                vec![
                    s.params.q().to_exact_string(),
                    s.params.delta().to_exact_string(),
                    s.shift.to_string(),
                    s.degree.to_string(),
                    (i + 1).to_string(),
                    sig(z, d),
                    sig(&self.0.tol, 3),
                ]
            })
            .collect()
    }

    fn text(&self, d: usize) -> String {
        let s = &self.0.spec;
        let zs: Vec<String> = self.0.zeros.iter().map(|z| sig(z, d)).collect();
        format!(
            "{} q={} delta={}: {} negative, zeros [{}]",
            s.label(),
            s.params.q().to_exact_string(),
            s.params.delta().to_exact_string(),
            self.0.neg_count,
            zs.join(", ")
        )
    }
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum CheckRecord {
    Pattern(Box<InterlacingReport>),
    Common(Box<CommonZeroReport>),
}

impl CheckRecord {
    pub fn verdict(&self) -> Verdict {
        match self {
            CheckRecord::Pattern(r) => r.verdict,
            CheckRecord::Common(r) => r.verdict,
        }
    }
}

const CHECK_HEADER: [&str; 11] = [
    "check",
    "q",
    "delta",
    "n",
    "verdict",
    "degenerate",
    "branch",
    "violations",
    "point",
    "newton_distance",
    "note",
];

fn pattern_row(r: &InterlacingReport) -> Vec<String> {
    let v: Vec<&str> = r.violations.iter().map(|v| v.expected.as_str()).collect();
    vec![
        r.check.clone(),
        r.q.to_exact_string(),
        r.delta.to_exact_string(),
        r.n.to_string(),
        r.verdict.to_string(),
        r.degenerate.to_string(),
        opt(&r.branch),
        v.join("; "),
        String::new(),
        String::new(),
        opt(&r.note).replace('\n', " "),
    ]
}

fn pattern_text(r: &InterlacingReport, d: usize) -> String {
    let mut s = format!(
        "{} q={} delta={} n={}: {}",
        r.check,
        r.q.to_exact_string(),
        r.delta.to_exact_string(),
        r.n,
        r.verdict
    );
    if let Some(b) = &r.branch {
        s += &format!(" [{b}]");
    }
    if let Some(note) = &r.note {
        s += &format!(" ({note})");
    }
    for v in &r.violations {
        s += &format!(
            "\n  violated {}: {} = {}, {} = {}",
            v.expected,
            v.left.label,
            sig(&v.left.value, d),
            v.right.label,
            sig(&v.right.value, d)
        );
    }
    s
}

impl Record for CheckRecord {
    fn header(&self) -> Vec<&'static str> {
        CHECK_HEADER.to_vec()
    }

    fn rows(&self, d: usize) -> Vec<Vec<String>> {
        match self {
            CheckRecord::Pattern(r) => vec![pattern_row(r)],
            CheckRecord::Common(r) => {
                let inter = r.interlacing.as_ref();
                vec![vec![
                    r.kind.to_string(),
                    r.q.to_exact_string(),
                    r.delta.to_exact_string(),
                    r.n.to_string(),
                    r.verdict.to_string(),
                    inter.map(|i| i.degenerate).unwrap_or(false).to_string(),
                    if r.is_common {
                        "common".into()
                    } else {
                        "not-common".into()
                    },
                    inter
                        .map(|i| {
                            let v: Vec<&str> =
                                i.violations.iter().map(|v| v.expected.as_str()).collect();
                            v.join("; ")
                        })
                        .unwrap_or_default(),
                    sig(&r.point, d),
                    sig(&r.newton_distance, 3),
                    opt(&r.note),
                ]]
            }
        }
    }

    fn text(&self, d: usize) -> String {
        match self {
            CheckRecord::Pattern(r) => pattern_text(r, d),
            CheckRecord::Common(r) => common_text(r, d),
        }
    }
}

fn common_text(r: &CommonZeroReport, d: usize) -> String {
    let mut s = format!(
        "{} q={} delta={} n={}: {}; point {} is {}common (newton distance {})",
        r.kind,
        r.q.to_exact_string(),
        r.delta.to_exact_string(),
        r.n,
        r.verdict,
        sig(&r.point, d),
        if r.is_common { "" } else { "not " },
        sig(&r.newton_distance, 3)
    );
    if let Some(note) = &r.note {
        s += &format!(" ({note})");
    }
    if let Some(i) = &r.interlacing {
        s += &format!("\n  interlacing of the remaining zeros: {}", i.verdict);
        for v in &i.violations {
            s += &format!("\n  violated {}", v.expected);
        }
    }
    s
}

#[derive(Serialize)]
#[serde(transparent)]
pub struct BoundsRow(pub BoundsRecord);

impl Record for BoundsRow {
    fn header(&self) -> Vec<&'static str> {
        vec!["q", "delta", "n", "neg_c", "B_n", "z_1n", "A_n", "chain"]
    }

    fn rows(&self, d: usize) -> Vec<Vec<String>> {
        let b = &self.0;
        vec![vec![
            b.q.to_exact_string(),
            b.delta.to_exact_string(),
            b.n.to_string(),
            sig(&b.neg_c, d),
            sig(&b.outer, d),
            sig(&b.z1, d),
            sig(&b.inner, d),
            if b.chain_holds() { "holds" } else { "fails" }.to_string(),
        ]]
    }

    fn text(&self, d: usize) -> String {
        let b = &self.0;
        format!(
            "q={} delta={} n={}: -c = {} < B = {} < z1 = {} < A = {} < 0 {}",
            b.q.to_exact_string(),
            b.delta.to_exact_string(),
            b.n,
            sig(&b.neg_c, d),
            sig(&b.outer, d),
            sig(&b.z1, d),
            sig(&b.inner, d),
            if b.chain_holds() { "holds" } else { "FAILS" }
        )
    }
}

#[derive(Serialize)]
pub struct TableRecord {
    pub q: PrecReal,
    pub n: usize,
    pub delta: PrecReal,
    pub outer: PrecReal,
    pub z1: PrecReal,
    pub inner: PrecReal,
    pub chain_holds: bool,
    /// Set under `--compare`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Comparison>,
}

#[derive(Serialize)]
pub struct Comparison {
    /// `None` when the point is not one of the published rows.
    pub printed: Option<ReferenceRow>,
    pub max_rel_err: Option<f64>,
    pub matches: Option<bool>,
}

impl Record for TableRecord {
    fn header(&self) -> Vec<&'static str> {
        let mut h = vec!["q", "n", "delta", "B_n", "z_1n", "A_n"];
        if self.comparison.is_some() {
            h.extend([
                "B_n_printed",
                "z_1n_printed",
                "A_n_printed",
                "max_rel_err",
                "match",
            ]);
        }
        h
    }

    fn rows(&self, d: usize) -> Vec<Vec<String>> {
        let mut r = vec![
            self.q.to_exact_string(),
            self.n.to_string(),
            self.delta.to_exact_string(),
            sig(&self.outer, d),
            sig(&self.z1, d),
            sig(&self.inner, d),
        ];
        if let Some(c) = &self.comparison {
            match &c.printed {
                Some(p) => r.extend([p.outer, p.z1, p.inner].map(|v| v.to_string())),
                None => r.extend([String::new(), String::new(), String::new()]),
            }
            r.push(
                c.max_rel_err
                    .map(|e| format!("{e:.3e}"))
                    .unwrap_or_default(),
            );
            r.push(opt(&c.matches));
        }
        vec![r]
    }

    fn text(&self, d: usize) -> String {
        let w = d + 8;
        let mut s = format!(
            "{:>6} {:>3} {:>8}  {:>w$} {:>w$} {:>w$}  chain {}",
            self.q.to_exact_string(),
            self.n,
            self.delta.to_exact_string(),
            sig(&self.outer, d),
            sig(&self.z1, d),
            sig(&self.inner, d),
            if self.chain_holds { "holds" } else { "FAILS" }
        );
        if let Some(Comparison {
            max_rel_err: Some(e),
            matches: Some(m),
            ..
        }) = &self.comparison
        {
            s += &format!("  rel err {e:.2e} {}", if *m { "ok" } else { "MISMATCH" });
        }
        s
    }
}

#[derive(Serialize)]
#[serde(transparent)]
pub struct MomentRow(pub MomentReport);

impl Record for MomentRow {
    fn header(&self) -> Vec<&'static str> {
        vec![
            "q",
            "delta",
            "n",
            "order",
            "mu",
            "abs_sum",
            "j_min",
            "j_max",
            "truncation_bound",
            "tolerance",
            "verdict",
        ]
    }

    fn rows(&self, d: usize) -> Vec<Vec<String>> {
        let m = &self.0;
        vec![vec![
            m.q.to_exact_string(),
            m.delta.to_exact_string(),
            m.n.to_string(),
            m.order.to_string(),
            sig(&m.mu, d),
            sig(&m.abs_sum, d),
            m.truncation.j_min.to_string(),
            m.truncation.j_max.to_string(),
            sig(&m.truncation_bound, 3),
            sig(&m.tolerance, 3),
            m.verdict.to_string(),
        ]]
    }

    fn text(&self, d: usize) -> String {
        let m = &self.0;
        format!(
            "q={} delta={} n={} mu_{} = {} ({}; |terms| {}, nodes {}..={}, tail <= {})",
            m.q.to_exact_string(),
            m.delta.to_exact_string(),
            m.n,
            m.order,
            sig(&m.mu, d),
            m.verdict,
            sig(&m.abs_sum, 3),
            m.truncation.j_min,
            m.truncation.j_max,
            sig(&m.truncation_bound, 3)
        )
    }
}

#[derive(Serialize)]
pub struct CommonZeroSearch {
    pub kind: CommonZeroKind,
    pub q: PrecReal,
    pub n: usize,
    pub lo: PrecReal,
    pub hi: PrecReal,
    pub delta: PrecReal,
    pub point: PrecReal,
    pub report: CommonZeroReport,
}

impl Record for CommonZeroSearch {
    fn header(&self) -> Vec<&'static str> {
        vec![
            "kind",
            "q",
            "n",
            "lo",
            "hi",
            "delta",
            "point",
            "is_common",
            "verdict",
        ]
    }

    fn rows(&self, d: usize) -> Vec<Vec<String>> {
        vec![vec![
            self.kind.to_string(),
            self.q.to_exact_string(),
            self.n.to_string(),
            self.lo.to_exact_string(),
            self.hi.to_exact_string(),
            sig(&self.delta, d),
            sig(&self.point, d),
            self.report.is_common.to_string(),
            self.report.verdict.to_string(),
        ]]
    }

    fn text(&self, d: usize) -> String {
        format!(
            "{} q={} n={}: delta* = {}, shared zero {}\n  {}",
            self.kind,
            self.q.to_exact_string(),
            self.n,
            sig(&self.delta, d),
            sig(&self.point, d),
            common_text(&self.report, d).replace('\n', "\n  ")
        )
    }
}
