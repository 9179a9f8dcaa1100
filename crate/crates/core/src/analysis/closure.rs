use serde::Serialize;

use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureMode {
    Subalgebra,
    Ideal,
    PClosure,
}

/// `span{[a, b] : a ∈ A, b ∈ B}`.
pub fn bracket_spaces(spec: &AlgebraSpec, a: &Subspace, b: &Subspace) -> Subspace {
    let mut vs = Vec::with_capacity(a.dim() * b.dim());
    for x in a.basis() {
        for y in b.basis() {
            let w = spec.bracket(x, y);
            if w.iter().any(|&c| c != 0) {
                vs.push(w);
            }
        }
    }
    spec.span(&vs)
}

pub fn is_subalgebra(spec: &AlgebraSpec, s: &Subspace) -> bool {
    let b = s.basis();
    (0..b.len()).all(|i| ((i + 1)..b.len()).all(|j| s.contains_vector(&spec.bracket(&b[i], &b[j]))))
}

pub fn is_ideal(spec: &AlgebraSpec, s: &Subspace) -> bool {
    s.basis().iter().all(|b| {
        (0..spec.dim()).all(|j| s.contains_vector(&spec.bracket(&spec.basis_vector(j), b)))
    })
}

/// Whether the basis p-powers lie in `s`; for a subalgebra this is
/// equivalent to p-stability.
pub fn is_p_stable(spec: &AlgebraSpec, s: &Subspace) -> bool {
    s.basis().iter().all(|b| s.contains_vector(&spec.p_power(b)))
}

pub fn is_p_subalgebra(spec: &AlgebraSpec, s: &Subspace) -> bool {
    is_subalgebra(spec, s) && is_p_stable(spec, s)
}

pub fn is_p_ideal(spec: &AlgebraSpec, s: &Subspace) -> bool {
    is_ideal(spec, s) && is_p_stable(spec, s)
}

pub fn is_abelian(spec: &AlgebraSpec, s: &Subspace) -> bool {
    let b = s.basis();
    (0..b.len()).all(|i| ((i + 1)..b.len()).all(|j| spec.bracket(&b[i], &b[j]).iter().all(|&c| c == 0)))
}

/// Smallest subspace containing `s` closed in the given sense.
///
/// `PClosure` expects a subalgebra and adds p-power images of the current
/// basis until stable; each round re-checks bracket closure, which should
/// never fail.
pub fn closure(spec: &AlgebraSpec, s: &Subspace, mode: ClosureMode) -> Result<Subspace> {
    spec.check_ambient(s)?;
    match mode {
        ClosureMode::Subalgebra => Ok(subalgebra_closure(spec, s)),
        ClosureMode::Ideal => Ok(ideal_closure(spec, s)),
        ClosureMode::PClosure => p_closure(spec, s),
    }
}

pub fn subalgebra_closure(spec: &AlgebraSpec, s: &Subspace) -> Subspace {
    let mut cur = s.clone();
    loop {
        let next = cur.sum(&bracket_spaces(spec, &cur, &cur)).expect("same ambient");
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

pub fn ideal_closure(spec: &AlgebraSpec, s: &Subspace) -> Subspace {
    let full = spec.full();
    let mut cur = s.clone();
    loop {
        let next = cur.sum(&bracket_spaces(spec, &full, &cur)).expect("same ambient");
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

pub fn p_closure(spec: &AlgebraSpec, s: &Subspace) -> Result<Subspace> {
    if !is_subalgebra(spec, s) {
        return Err(Error::NotASubalgebra);
    }
    let mut cur = s.clone();
    loop {
        let powers: Vec<Vec<u32>> = cur.basis().iter().map(|b| spec.p_power(b)).collect();
        let next = cur.sum(&spec.span(&powers))?;
        if !is_subalgebra(spec, &next) {
            return Err(Error::theorem(
                "fact-p-closure",
                "adding p-powers broke bracket closure",
            ));
        }
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
}

/// p-closure of the span of one element.
pub fn p_closure_of(spec: &AlgebraSpec, x: &[u32]) -> Subspace {
    let mut vs = Vec::new();
    let mut y = x.to_vec();
    let mut cur = spec.zero_subspace();
    loop {
        if cur.contains_vector(&y) {
            return cur;
        }
        vs.push(y.clone());
        cur = spec.span(&vs);
        y = spec.p_power(&y);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransporterMode {
    Centralizer,
    Normalizer,
}

/// `{x : [x, s] = 0}`.
pub fn centralizer(spec: &AlgebraSpec, s: &Subspace) -> Subspace {
    let rows: Vec<Vec<u32>> = s
        .basis()
        .iter()
        .flat_map(|b| spec.ad_matrix(b).to_rows())
        .collect();
    if rows.is_empty() {
        return spec.full();
    }
    Matrix::from_rows(spec.field(), spec.dim(), &rows)
        .expect("shape")
        .kernel()
}

pub fn centralizer_of(spec: &AlgebraSpec, x: &[u32]) -> Subspace {
    spec.ad_matrix(x).kernel()
}

/// `{x : [x, s] ⊆ s}`, as the kernel of `x -> ([x, b_k] mod s)_k`.
pub fn normalizer(spec: &AlgebraSpec, s: &Subspace) -> Subspace {
    let n = spec.dim();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for b in s.basis() {
        let cols: Vec<Vec<u32>> = (0..n)
            .map(|a| s.quotient_coordinates(&spec.bracket(&spec.basis_vector(a), b)))
            .collect();
        let m = Matrix::from_columns(spec.field(), n - s.dim(), &cols);
        rows.extend(m.to_rows());
    }
    if rows.is_empty() {
        return spec.full();
    }
    Matrix::from_rows(spec.field(), n, &rows).expect("shape").kernel()
}

/// Centralizer or normalizer, checked to be a p-subalgebra whenever `s` is a
/// p-subalgebra (for the centralizer: always).
pub fn transporter(spec: &AlgebraSpec, s: &Subspace, mode: TransporterMode) -> Result<Subspace> {
    spec.check_ambient(s)?;
    let (t, must_be_p) = match mode {
        TransporterMode::Centralizer => (centralizer(spec, s), true),
        TransporterMode::Normalizer => (normalizer(spec, s), is_p_subalgebra(spec, s)),
    };
    if must_be_p && !is_p_subalgebra(spec, &t) {
        return Err(Error::theorem(
            "fact-p-subalgebras",
            format!("{mode:?} is not a p-subalgebra"),
        ));
    }
    Ok(t)
}

pub fn center(spec: &AlgebraSpec) -> Subspace {
    centralizer(spec, &spec.full())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    Derived,
    LowerCentral,
    UpperCentral,
}

/// A derived, lower central or upper central series of a subalgebra `h`.
///
/// `terms` starts with `h` (derived, lower central) or `0` (upper central)
/// and stops at the first repeated term. `class` is the derived length or
/// nilpotency class when the series reaches `0` (resp. `h`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesResult {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace>,
    pub stabilized: bool,
    pub class: Option<usize>,
}

impl SeriesResult {
    pub fn last(&self) -> &Subspace {
        self.terms.last().expect("nonempty series")
    }

    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.dim()).collect()
    }

    pub fn is_soluble(&self) -> bool {
        self.kind == SeriesKind::Derived && self.class.is_some()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.kind != SeriesKind::Derived && self.class.is_some()
    }
}

pub fn series(spec: &AlgebraSpec, h: &Subspace, kind: SeriesKind) -> Result<SeriesResult> {
    spec.check_ambient(h)?;
    if !is_subalgebra(spec, h) {
        return Err(Error::NotASubalgebra);
    }
    let mut terms = vec![match kind {
        SeriesKind::UpperCentral => spec.zero_subspace(),
        _ => h.clone(),
    }];
    loop {
        let cur = terms.last().unwrap();
        let next = match kind {
            SeriesKind::Derived => bracket_spaces(spec, cur, cur),
            SeriesKind::LowerCentral => bracket_spaces(spec, h, cur),
            SeriesKind::UpperCentral => next_upper_central(spec, h, cur),
        };
        if &next == cur {
            break;
        }
        terms.push(next);
    }
    let last = terms.last().unwrap();
    let reached = match kind {
        SeriesKind::UpperCentral => last == h,
        _ => last.is_zero(),
    };
    // Derived length counts brackets taken; nilpotency class c has h^{c+1} = 0
    // with h^1 = h, so both are `terms.len() - 1` when the series reaches its end.
    let class = reached.then(|| terms.len() - 1);
    Ok(SeriesResult {
        kind,
        terms,
        stabilized: true,
        class,
    })
}

/// `{x ∈ h : [x, h] ⊆ z}`.
fn next_upper_central(spec: &AlgebraSpec, h: &Subspace, z: &Subspace) -> Subspace {
    let hb = h.basis();
    let m = hb.len();
    if m == 0 {
        return h.clone();
    }
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for b in hb {
        let cols: Vec<Vec<u32>> = hb
            .iter()
            .map(|a| z.quotient_coordinates(&spec.bracket(a, b)))
            .collect();
        rows.extend(Matrix::from_columns(spec.field(), spec.dim() - z.dim(), &cols).to_rows());
    }
    let ker = if rows.iter().all(|r| r.is_empty()) {
        Subspace::full(spec.field(), m)
    } else {
        Matrix::from_rows(spec.field(), m, &rows).expect("shape").kernel()
    };
    let vs: Vec<Vec<u32>> = ker.basis().iter().map(|c| h.combine(c)).collect();
    spec.span(&vs)
}

pub fn is_soluble(spec: &AlgebraSpec, h: &Subspace) -> Result<bool> {
    Ok(series(spec, h, SeriesKind::Derived)?.class.is_some())
}

pub fn is_nilpotent(spec: &AlgebraSpec, h: &Subspace) -> Result<bool> {
    Ok(series(spec, h, SeriesKind::LowerCentral)?.class.is_some())
}

pub fn nilpotency_class(spec: &AlgebraSpec, h: &Subspace) -> Result<Option<usize>> {
    Ok(series(spec, h, SeriesKind::LowerCentral)?.class)
}
