//! A saturated triple whose geometric image is not normal.
//!
//! The structure group is
//! `G′ = ((⟨a₁⟩×⟨a₂⟩×⟨a₃⟩×⟨a₄⟩) ⋊ (⟨b₁⟩×⟨b₂⟩)) ⋊ ⟨ξ⟩` with `aᵢ` of order `2n` and the
//! rest of order 2. The set is `H′ × ℤ/2`, one copy of a double cover per element of
//! `H′ = ⟨a, b⟩`. Galois acts through the group generated by `(u, σ)` and `(v, id)`.

use std::fmt;
use std::sync::Arc;

use crate::action::{automorphism_from_images, generated_transformation_group, semidirect_product, AutAction};
use crate::action::{SemidirectProduct, TransformationGroup};
use crate::error::{GroupError, TorsorError};
use crate::group::{FiniteGroup, MAX_ORDER};
use crate::hom::GroupHom;
use crate::perm::Perm;
use crate::subgroup::Conjugation;
use crate::torsor::{
    check_exactness_conditions, geometric_image, saturate, translation_cocycle, validate_torsor, BaseDatum, EtaleGroup,
    GeometricImage, PointedTorsor, TorsorData, TorsorMorphism,
};
use crate::Elem;

use super::ExampleReport;

/// A word in two letters, read right to left: `uv` applies `v` first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    text: String,
    /// `(letter, exponent)` with letter 0 for `u`/`x` and 1 for `v`/`y`.
    syllables: Vec<(usize, usize)>,
}

impl Word {
    /// Parses `u3vu2v`-style text; `x`/`y` are accepted as aliases of `u`/`v`.
    pub fn parse(text: &str) -> Result<Word, String> {
        let mut syllables = Vec::new();
        let mut chars = text.chars().peekable();
        while let Some(c) = chars.next() {
            let letter = match c {
                'u' | 'x' => 0,
                'v' | 'y' => 1,
                _ => return Err(format!("unexpected {c:?} in word {text:?}")),
            };
            let mut exp = 0usize;
            while let Some(d) = chars.peek().and_then(|d| d.to_digit(10)) {
                exp = exp * 10 + d as usize;
                chars.next();
            }
            syllables.push((letter, exp.max(1)));
        }
        Ok(Word { text: text.to_string(), syllables })
    }

    /// The composite permutation, `x` for letter 0 and `y` for letter 1.
    pub fn evaluate(&self, x: &Perm, y: &Perm) -> Perm {
        let mut acc = Perm::identity(x.len());
        for &(letter, exp) in &self.syllables {
            let p = if letter == 0 { x } else { y };
            acc = acc.compose(&p.pow(exp));
        }
        acc
    }

    /// Same word with `x`, `y` spelled `u`, `v`.
    pub fn normalized(&self) -> String {
        self.syllables
            .iter()
            .map(|&(l, e)| {
                let c = if l == 0 { 'u' } else { 'v' };
                if e == 1 {
                    c.to_string()
                } else {
                    format!("{c}{e}")
                }
            })
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.text.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&self.text)
        }
    }
}

/// Exponents of `a₁ a₂ a₃ a₄ b₁ b₂ ξ` in normal form.
pub type Exponents = [i64; 7];

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub n: usize,
    /// `G′`; id is `h·2 + c` for `h ∈ H′`, `c` the power of `ξ`.
    pub group: Arc<FiniteGroup>,
    pub inner: SemidirectProduct,
    pub outer: SemidirectProduct,
    pub sigma: Perm,
    pub a: [Elem; 4],
    pub b: [Elem; 2],
    pub xi: Elem,
    pub u: Perm,
    pub v: Perm,
    pub flip: Perm,
    /// Right action of every element of `G′` on the set.
    pub right: Vec<Perm>,
    /// `⟨(u, σ), (v, id)⟩` acting on the set followed by `G′`.
    pub galois: TransformationGroup,
    pub torsor: Arc<PointedTorsor>,
    pub saturation: Arc<PointedTorsor>,
    pub inclusion: TorsorMorphism,
    pub image: GeometricImage,
    pub witness: Option<Conjugation>,
}

impl Counterexample {
    pub fn elem(&self, e: Exponents) -> Elem {
        let g = &self.group;
        let gens = [self.a[0], self.a[1], self.a[2], self.a[3], self.b[0], self.b[1], self.xi];
        gens.iter().zip(e).fold(g.identity(), |acc, (&s, k)| g.mul(acc, g.pow(s, k)))
    }

    /// Normal-form exponents of an element.
    pub fn exponents(&self, x: Elem) -> Exponents {
        let m = 2 * self.n as i64;
        let c = (x % 2) as i64;
        let h = x / 2;
        let (aid, bid) = ((h / 4) as i64, (h % 4) as i64);
        [aid / (m * m * m), aid / (m * m) % m, aid / m % m, aid % m, bid / 2, bid % 2, c]
    }

    pub fn render(&self, x: Elem) -> String {
        render_exponents(self.exponents(x))
    }

    /// Point `(i, ε)` for `i ∈ H′` given by its id in `H′`.
    pub fn point(&self, i: Elem, eps: usize) -> usize {
        i * 2 + eps
    }

    pub fn basepoint(&self) -> usize {
        self.point(self.inner.group.identity(), 0)
    }

    /// The element `g` with `p₀·g = word(u, v)(p₀)`.
    pub fn basepoint_value(&self, word: &Word) -> Elem {
        let p = word.evaluate(&self.u, &self.v).apply(self.basepoint());
        self.torsor.coord(p)
    }

    pub fn galois_group(&self) -> &Arc<FiniteGroup> {
        &self.galois.group
    }

    /// `(☠)`: `u(p·g) = u(p)·σ(g)` for all points and group elements. Returns the first failure.
    pub fn skull_failure(&self) -> Option<(usize, Elem)> {
        self.diagram_failure(&self.u, |g| self.sigma.apply(g))
    }

    /// `(♕)`: `v(p·g) = v(p)·g`.
    pub fn queen_failure(&self) -> Option<(usize, Elem)> {
        self.diagram_failure(&self.v, |g| g)
    }

    fn diagram_failure(&self, f: &Perm, twist: impl Fn(Elem) -> Elem) -> Option<(usize, Elem)> {
        for g in self.group.elements() {
            let (r, rt) = (&self.right[g], &self.right[twist(g)]);
            if let Some(p) = (0..f.len()).find(|&p| f.apply(r.apply(p)) != rt.apply(f.apply(p))) {
                return Some((p, g));
            }
        }
        None
    }
}

fn render_exponents(e: Exponents) -> String {
    let names = ["a1", "a2", "a3", "a4", "b1", "b2", "xi"];
    let parts: Vec<String> = names
        .iter()
        .zip(e)
        .filter(|(_, k)| *k != 0)
        .map(|(name, k)| if k == 1 { name.to_string() } else { format!("{name}^{k}") })
        .collect();
    if parts.is_empty() {
        "e".into()
    } else {
        parts.join("")
    }
}

fn swap_perm(l: usize, m: usize, i: usize, j: usize) -> Perm {
    // ids of (ℤ/m)^4 are base-m digits, a₁ most significant
    let digit = |x: usize, k: usize| x / m.pow(3 - k as u32) % m;
    Perm::from_images(
        (0..l)
            .map(|x| {
                let mut d = [digit(x, 0), digit(x, 1), digit(x, 2), digit(x, 3)];
                d.swap(i, j);
                ((d[0] * m + d[1]) * m + d[2]) * m + d[3]
            })
            .collect(),
    )
    .unwrap()
}

/// Builds and validates the triple for even `n ≥ 2`; only `n = 2` fits the table size.
pub fn build_normality_counterexample(n: usize) -> Result<(Counterexample, ExampleReport), TorsorError> {
    assert!(n >= 2 && n.is_multiple_of(2), "n must be even and at least 2");
    let m = 2 * n;
    let order = m.pow(4) * 8;
    if order > MAX_ORDER {
        return Err(TorsorError::Group(GroupError::TooLarge { order, limit: MAX_ORDER }));
    }
    let mut report = ExampleReport::new("normality-counterexample");
    let z = FiniteGroup::cyclic(m);
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let a_grp = {
        let zz = FiniteGroup::direct_product(&z, &z)?;
        let zzz = FiniteGroup::direct_product(&zz, &z)?;
        Arc::new(FiniteGroup::direct_product(&zzz, &z)?)
    };
    let b_grp = Arc::new(FiniteGroup::direct_product(&z2, &z2)?);
    // b₁ = (1, 0) swaps a₁ ↔ a₂, b₂ = (0, 1) swaps a₃ ↔ a₄
    let (b1_local, b2_local) = (2, 1);
    let swaps = AutAction::from_generator_images(
        b_grp.clone(),
        a_grp.clone(),
        &[(b1_local, swap_perm(a_grp.order(), m, 0, 1)), (b2_local, swap_perm(a_grp.order(), m, 2, 3))],
    )?;
    let inner = semidirect_product(&swaps)?;
    let h = inner.group.clone();
    let a_local: [Elem; 4] = [m * m * m, m * m, m, 1];
    let a_h: Vec<Elem> = a_local.iter().map(|&x| inner.pair(x, b_grp.identity())).collect();
    let (b1_h, b2_h) = (inner.pair(0, b1_local), inner.pair(0, b2_local));
    let nn = n as i64;
    // ξ aᵢ ξ⁻¹ = aᵢⁿ⁺¹, ξ b₁ ξ⁻¹ = b₁, ξ b₂ ξ⁻¹ = a₃ⁿ a₄ⁿ b₂
    let mut xi_images: Vec<(Elem, Elem)> = a_h.iter().map(|&x| (x, h.pow(x, nn + 1))).collect();
    xi_images.push((b1_h, b1_h));
    xi_images.push((b2_h, h.mul(h.mul(h.pow(a_h[2], nn), h.pow(a_h[3], nn)), b2_h)));
    let xi_aut = automorphism_from_images(&h, &xi_images)?;
    let xi_action = AutAction::from_generator_images(z2.clone(), h.clone(), &[(1, xi_aut.clone())])?;
    let outer = semidirect_product(&xi_action)?;
    let g = outer.group.clone();
    report.object("G'", format!("order {}", g.order()));
    let lift = |x: Elem| outer.pair(x, 0);
    let a = [lift(a_h[0]), lift(a_h[1]), lift(a_h[2]), lift(a_h[3])];
    let b = [lift(b1_h), lift(b2_h)];
    let xi = outer.pair(h.identity(), 1);

    let sigma_images = [
        (a[0], a[2]),
        (a[1], a[3]),
        (a[2], a[0]),
        (a[3], a[1]),
        (b[0], b[1]),
        (b[1], b[0]),
        (xi, g.mul(g.mul(g.pow(a[0], nn), g.pow(a[2], nn)), xi)),
    ];
    let sigma = automorphism_from_images(&g, &sigma_images)?;
    report.check("sigma is an automorphism of order 2", "true", sigma.pow(2).is_identity());

    // points (i, ε) with id 2i + ε
    let size = g.order();
    let right: Vec<Perm> = g
        .elements()
        .map(|j| {
            let (hj, c) = (j / 2, j % 2);
            Perm::from_raw(
                (0..size)
                    .map(|p| {
                        let (i, eps) = (p / 2, p % 2);
                        let ih = h.mul(i, hj);
                        if c == 0 {
                            (ih * 2 + eps) as u32
                        } else {
                            (xi_aut.apply(ih) * 2 + (1 - eps)) as u32
                        }
                    })
                    .collect(),
            )
        })
        .collect();
    let a1a3_h = h.mul(a_h[0], a_h[2]);
    let u = Perm::from_images(
        (0..size)
            .map(|p| {
                let (i, eps) = (p / 2, p % 2);
                let si = sigma.apply(lift(i)) / 2;
                h.mul(a1a3_h, si) * 2 + eps
            })
            .collect(),
    )?;
    let v = Perm::from_images((0..size).map(|p| h.mul(b1_h, p / 2) * 2 + p % 2).collect())?;
    let flip = Perm::from_images((0..size).map(|p| p ^ 1).collect())?;

    let mut draft = Counterexample {
        n,
        group: g.clone(),
        inner,
        outer,
        sigma: sigma.clone(),
        a,
        b,
        xi,
        u: u.clone(),
        v: v.clone(),
        flip: flip.clone(),
        right,
        galois: TransformationGroup { group: Arc::new(FiniteGroup::trivial()), perms: vec![], generators: vec![] },
        torsor: Arc::new(placeholder()),
        saturation: Arc::new(placeholder()),
        inclusion: TorsorMorphism::identity(Arc::new(placeholder())),
        image: geometric_image(&placeholder()),
        witness: None,
    };
    report.check("skull diagram holds for all g", "none", fmt_failure(draft.skull_failure()));
    report.check("queen diagram holds for all g", "none", fmt_failure(draft.queen_failure()));

    // Galois group: permutations of the set followed by G′
    let pair_perm = |set: &Perm, grp: &Perm| {
        Perm::from_raw(set.images().iter().copied().chain(grp.images().iter().map(|&x| x + size as u32)).collect())
    };
    let galois =
        generated_transformation_group(&[pair_perm(&u, &sigma), pair_perm(&v, &Perm::identity(size))], MAX_ORDER)?;
    let gamma = galois.group.clone();
    report.object("M", format!("order {}", gamma.order()));
    report.check("Galois group order", 64, gamma.order());
    let restrict = |p: &Perm, from: usize| {
        Perm::from_raw(p.images()[from..from + size].iter().map(|&x| x - from as u32).collect())
    };
    let maps: Vec<Perm> = galois.perms.iter().map(|p| restrict(p, size)).collect();
    let set_maps: Vec<Perm> = galois.perms.iter().map(|p| restrict(p, 0)).collect();
    let structure = Arc::new(EtaleGroup::new(AutAction::new(gamma.clone(), g.clone(), maps)?));

    // Π = ℤ/2 × M, the first factor the deck involution of the double cover
    let pi = Arc::new(FiniteGroup::direct_product(&z2, &gamma)?);
    let k = gamma.order();
    let projection = GroupHom::new(pi.clone(), gamma.clone(), (0..pi.order()).map(|x| x % k).collect())?;
    let base = Arc::new(BaseDatum::new(projection));
    report.check("base is geometrically connected", "true", base.is_geometrically_connected());
    let left: Vec<Perm> = pi
        .elements()
        .map(|x| if x / k == 1 { flip.compose(&set_maps[x % k]) } else { set_maps[x % k].clone() })
        .collect();
    let torsor = Arc::new(validate_torsor(TorsorData {
        base: base.clone(),
        structure,
        size,
        left,
        right: draft.right.clone(),
        basepoint: 0,
    })?);
    report.check("torsor validates", "true", true);

    let cocycle = translation_cocycle(&torsor);
    let (x_id, y_id) = (galois.generators[0], galois.generators[1]);
    let flip_id = k + gamma.identity();
    draft.galois = galois;
    report.check("cocycle of the deck involution", "xi", draft.render(cocycle.at(flip_id)));
    report.check("cocycle of x", "a1a3", draft.render(cocycle.at(x_id)));
    report.check("cocycle of y", "b1", draft.render(cocycle.at(y_id)));
    report.check("cocycle law", "none", format!("{:?}", cocycle.law_violation(&torsor)).replace("None", "none"));

    let (saturation, inclusion) = saturate(&torsor)?;
    let sat_group = inclusion.group_map().image_kernel().0;
    report.object("G", format!("saturated structure group of order {}", sat_group.order()));
    report.check("saturated triple is saturated", "true", crate::torsor::is_saturated(&saturation));
    let a1a3 = g.mul(a[0], a[2]);
    report.check("saturation contains xi, b1, a1a3", "true", [xi, b[0], a1a3].iter().all(|&x| sat_group.contains(x)));

    let image = geometric_image(&torsor);
    let e = |v: Exponents| draft.elem(v);
    let mut expected = vec![g.identity(), xi, e([nn, 0, nn, 0, 0, 0, 0]), e([nn, 0, nn, 0, 0, 0, 1])];
    expected.sort_unstable();
    let render_set = |s: &[Elem]| s.iter().map(|&x| draft.render(x)).collect::<Vec<_>>().join(", ");
    report.check(
        "component stabilizer",
        render_set(&[g.identity(), xi]),
        render_set(image.component_stabilizer.elements()),
    );
    report.check("geometric image", render_set(&expected), render_set(image.image.elements()));
    report.check("geometric image order", 4, image.image.order());

    let repointed = torsor.repointed(flip.apply(0))?;
    report.check(
        "geometric image independent of the lift",
        render_set(image.image.elements()),
        render_set(geometric_image(&repointed).image.elements()),
    );

    let witness = image.image.normality_witness_among([xi, b[0], a1a3]);
    match &witness {
        Some(w) => {
            let nn_exp = nn;
            report.check("conjugating element", "b1", draft.render(w.g));
            report.check("conjugated element", render_exponents([nn_exp, 0, nn_exp, 0, 0, 0, 0]), draft.render(w.h));
            report.check("conjugate", render_exponents([0, nn_exp, nn_exp, 0, 0, 0, 0]), draft.render(w.conjugate));
        }
        None => {
            report.check("geometric image is normal", "false", "true");
        }
    }
    let sat_report = check_exactness_conditions(&saturation)?;
    report.check("normality fails on the saturated triple", "false", sat_report.normality_ok());
    report.check("N non-normal: witness", "b1", witness.as_ref().map_or("none".to_string(), |w| draft.render(w.g)));

    draft.torsor = torsor;
    draft.saturation = saturation;
    draft.inclusion = inclusion;
    draft.image = image;
    draft.witness = witness;
    Ok((draft, report))
}

fn fmt_failure(f: Option<(usize, Elem)>) -> String {
    match f {
        None => "none".into(),
        Some((p, g)) => format!("point {p}, element {g}"),
    }
}

fn placeholder() -> PointedTorsor {
    crate::torsor::trivial_torsor(&Arc::new(BaseDatum::trivial()))
}

/// Equation families as listed with their basepoint values; each family's words
/// must agree.
pub const VERIFICATION_LIST: [(&str, &[&str], Option<Exponents>); 9] = [
    ("(i)", &["uvu2vu", "vuvu2vuv", "vu3vu2vu3v"], Some([0, 0, 2, 2, 0, 0, 0])),
    ("(ii)", &["vu2vu2", "u2vu2v"], Some([2, 2, 0, 0, 0, 0, 0])),
    ("(iii) first", &["u3vuv", "vu3vu"], Some([0, 0, 3, 1, 1, 1, 0])),
    ("(iii) second", &["vuvu3", "uvu3v"], Some([0, 0, 1, 3, 1, 1, 0])),
    ("(iv) first", &["u3vu3vu2vuv", "vu3vu3vu3v", "vuvu2vu3vu3"], Some([3, 2, 3, 2, 0, 0, 0])),
    ("(iv) second", &["uvuvu2vu3v", "vuvuvuv", "vu3vu2vuvu"], Some([1, 2, 1, 2, 0, 0, 0])),
    ("(v)", &["vuvuvuvu", "u3vu3vu3vu3v"], Some([2, 2, 2, 2, 0, 0, 0])),
    ("(vi)", &["u3vu2vuvu2v", "uvu2vu3vu2v", "vu2vu3vu2vu", "vu2vuvu2vu3"], Some([2, 2, 2, 2, 0, 0, 0])),
    ("(vii)", &["u4", "v2", ""], None),
];

/// Defining relations of the Galois group in `x`, `y`.
pub const RELATION_LIST: [(&str, &[&str]); 9] = [
    ("(i)", &["xyx2yx", "yxyx2yxy", "yx3yx2yx3y"]),
    ("(ii)", &["yx2yx2", "x2yx2y"]),
    ("(iii) first", &["x3yxy", "yx3yx"]),
    ("(iii) second", &["yxyx3", "xyx3y"]),
    ("(iv) first", &["x3yx3yx2yxy", "yx3yx3yx3y", "yxyx2yx3yx3"]),
    ("(iv) second", &["xyxyx2yx3y", "yxyxyxy", "yx3yx2yxyx"]),
    ("(v)", &["x3yx2yxyx2y", "xyx2yx3yx2y", "yx2yx3yx2yx", "yx2yxyx2yx3"]),
    ("(vi)", &["yxyxyxyx", "x3yx3yx3yx3y"]),
    ("(vii)", &["x4", "y2", ""]),
];

fn first_disagreement(perms: &[Perm], words: &[Word], point: usize) -> Option<String> {
    let first = &perms[0];
    perms.iter().zip(words).skip(1).find(|(p, _)| *p != first).map(|(p, w)| {
        let q = (0..p.len()).find(|&q| p.apply(q) != first.apply(q)).unwrap_or(point);
        format!("{} and {} differ at {q}: {} vs {}", words[0], w, first.apply(q), p.apply(q))
    })
}

/// Checks every equation family as permutation identities on the set and on `G′`,
/// and the listed basepoint values.
pub fn verify_equation_table(ex: &Counterexample) -> Result<ExampleReport, TorsorError> {
    if ex.n != 2 {
        return Err(TorsorError::Group(GroupError::Mismatch("the table is for n = 2".into())));
    }
    let mut report = ExampleReport::new("equation-table");
    let id = Perm::identity(ex.group.order());
    let parse = |ws: &[&str]| ws.iter().map(|w| Word::parse(w)).collect::<Result<Vec<_>, _>>();
    let parse = |ws: &[&str]| parse(ws).map_err(|e| TorsorError::Group(GroupError::Mismatch(e)));

    for (name, words, value) in VERIFICATION_LIST {
        let words = parse(words)?;
        let on_set: Vec<Perm> = words.iter().map(|w| w.evaluate(&ex.u, &ex.v)).collect();
        let on_group: Vec<Perm> = words.iter().map(|w| w.evaluate(&ex.sigma, &id)).collect();
        if let Some(exp) = value {
            report.check(
                format!("{name} permutation identity on the set"),
                "equal",
                first_disagreement(&on_set, &words, ex.basepoint()).unwrap_or_else(|| "equal".into()),
            );
            report.check(
                format!("{name} identity in Aut(G') under (sigma, id)"),
                "equal",
                first_disagreement(&on_group, &words, 0).unwrap_or_else(|| "equal".into()),
            );
            for w in &words {
                report.check(
                    format!("{name} {} at p", w.normalized()),
                    render_exponents(exp),
                    ex.render(ex.basepoint_value(w)),
                );
            }
        } else {
            // each word is a relation w = 1
            for (w, (ps, pg)) in words.iter().zip(on_set.iter().zip(&on_group)).filter(|(w, _)| !w.syllables.is_empty())
            {
                report.check(format!("{name} {} is the identity on the set", w.normalized()), "true", ps.is_identity());
                report.check(format!("{name} {} is the identity on G'", w.normalized()), "true", pg.is_identity());
                report.check(format!("{name} {}(p) = p", w.normalized()), "e", ex.render(ex.basepoint_value(w)));
            }
        }
    }

    // relations hold in the Galois group itself, and pair up with the verified families
    let ver_norm: Vec<Vec<String>> = VERIFICATION_LIST
        .iter()
        .map(|(_, ws, _)| ws.iter().map(|w| Word::parse(w).unwrap().normalized()).collect())
        .collect();
    let x = &ex.galois.perms[ex.galois.generators[0]];
    let y = &ex.galois.perms[ex.galois.generators[1]];
    let mut pairing = Vec::new();
    for (name, words) in RELATION_LIST {
        let words = parse(words)?;
        let in_m: Vec<Perm> = words.iter().map(|w| w.evaluate(x, y)).collect();
        let holds = if words.iter().any(|w| w.syllables.is_empty()) {
            words.iter().zip(&in_m).filter(|(w, _)| !w.syllables.is_empty()).all(|(_, p)| p.is_identity())
        } else {
            first_disagreement(&in_m, &words, 0).is_none()
        };
        report.check(format!("relation {name} holds under (u, sigma), (v, id)"), "true", holds);
        let norm: Vec<String> = words.iter().map(Word::normalized).collect();
        let matched = ver_norm.iter().position(|v| *v == norm).map_or("-", |i| VERIFICATION_LIST[i].0);
        pairing.push(format!("{name}->{matched}"));
    }
    report.object("relation pairing", pairing.join(" "));
    Ok(report)
}
