//! Affine algebraic groups over F_p, the group `A_m G` of their arcs, the
//! constant section `s`, the splitting `h`, and the iterative logarithmic
//! derivative `ℓD(g) = h(∇(g))`.

use crate::algebra::{Modulus, MultiPoly, RatFunc};
use crate::arc::{
    apply_to_arc, nabla, prolong_variety, ArcPoint, ArcVariety, PolyMap, RegularFn,
    VarietyPresentation,
};
use crate::derivation::HSDerivation;
use crate::error::{Error, Result};

/// Which construction produced a group. Samplers and solvers dispatch on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// `G_a`: `A^1` with `x + y`.
    Additive,
    /// `G_m`: `A^1 ∖ {0}` with `x y`.
    Multiplicative,
    /// The `ax + b` group: `(a, b)·(a', b') = (a a', a b' + b)`, `a` inverted.
    Affine,
    Product(Vec<GroupKind>),
    Custom,
}

/// An affine algebraic group with constant coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupPresentation {
    name: String,
    kind: GroupKind,
    variety: VarietyPresentation,
    mul: PolyMap,
    inv: PolyMap,
    identity: Vec<RatFunc>,
}

impl GroupPresentation {
    /// Validates dimensions, constant coefficients and `e ∈ G`. The group
    /// axioms themselves are not checked here; see [`check_group_axioms`].
    pub fn new(
        name: impl Into<String>,
        variety: VarietyPresentation,
        mul: PolyMap,
        inv: PolyMap,
        identity: Vec<RatFunc>,
    ) -> Result<Self> {
        Self::with_kind(name, GroupKind::Custom, variety, mul, inv, identity)
    }

    fn with_kind(
        name: impl Into<String>,
        kind: GroupKind,
        variety: VarietyPresentation,
        mul: PolyMap,
        inv: PolyMap,
        identity: Vec<RatFunc>,
    ) -> Result<Self> {
        let n = variety.n_vars();
        let dims = [
            (mul.source_dim(), 2 * n),
            (mul.target_dim(), n),
            (inv.source_dim(), n),
            (inv.target_dim(), n),
            (identity.len(), n),
        ];
        for (actual, expected) in dims {
            if actual != expected {
                return Err(Error::DimensionMismatch { expected, actual });
            }
        }
        if !variety.is_over_constants()
            || !mul.is_over_constants()
            || !inv.is_over_constants()
            || !identity.iter().all(RatFunc::is_constant)
        {
            return Err(Error::NotOverConstants);
        }
        if !variety.contains(&identity)? {
            return Err(Error::InvalidPresentation(
                "identity does not lie on the variety".into(),
            ));
        }
        Ok(GroupPresentation {
            name: name.into(),
            kind,
            variety,
            mul,
            inv,
            identity,
        })
    }

    pub fn additive(modulus: Modulus) -> Self {
        let x = MultiPoly::var(modulus, 2, 0);
        let y = MultiPoly::var(modulus, 2, 1);
        let u = MultiPoly::var(modulus, 1, 0);
        Self::with_kind(
            "Ga",
            GroupKind::Additive,
            VarietyPresentation::affine_space(modulus, vec!["x".into()]),
            PolyMap::from_polys(2, vec![&x + &y]).unwrap(),
            PolyMap::from_polys(1, vec![-u]).unwrap(),
            vec![RatFunc::zero(modulus)],
        )
        .expect("G_a presentation is valid")
    }

    pub fn multiplicative(modulus: Modulus) -> Self {
        let x = MultiPoly::var(modulus, 2, 0);
        let y = MultiPoly::var(modulus, 2, 1);
        let u = MultiPoly::var(modulus, 1, 0);
        let variety =
            VarietyPresentation::new(modulus, vec!["x".into()], vec![], vec![u.clone()]).unwrap();
        let inv = RegularFn::new(MultiPoly::one(modulus, 1), u).unwrap();
        Self::with_kind(
            "Gm",
            GroupKind::Multiplicative,
            variety,
            PolyMap::from_polys(2, vec![&x * &y]).unwrap(),
            PolyMap::new(1, vec![inv]).unwrap(),
            vec![RatFunc::one(modulus)],
        )
        .expect("G_m presentation is valid")
    }

    pub fn affine(modulus: Modulus) -> Self {
        let v: Vec<MultiPoly> = (0..4).map(|i| MultiPoly::var(modulus, 4, i)).collect();
        let (a, b, a2, b2) = (&v[0], &v[1], &v[2], &v[3]);
        let ua = MultiPoly::var(modulus, 2, 0);
        let ub = MultiPoly::var(modulus, 2, 1);
        let variety = VarietyPresentation::new(
            modulus,
            vec!["a".into(), "b".into()],
            vec![],
            vec![ua.clone()],
        )
        .unwrap();
        let inv = vec![
            RegularFn::new(MultiPoly::one(modulus, 2), ua.clone()).unwrap(),
            RegularFn::new(-ub, ua).unwrap(),
        ];
        Self::with_kind(
            "AxB",
            GroupKind::Affine,
            variety,
            PolyMap::from_polys(4, vec![a * a2, &(a * b2) + b]).unwrap(),
            PolyMap::new(2, inv).unwrap(),
            vec![RatFunc::one(modulus), RatFunc::zero(modulus)],
        )
        .expect("ax+b presentation is valid")
    }

    /// Direct product; coordinates of factor `k` (1-based) get suffix `k`.
    pub fn product(factors: &[GroupPresentation]) -> Result<Self> {
        let Some(first) = factors.first() else {
            return Err(Error::InvalidPresentation("empty product".into()));
        };
        let modulus = first.modulus();
        if let Some(bad) = factors.iter().find(|g| g.modulus() != modulus) {
            return Err(Error::ModulusMismatch {
                left: modulus.p(),
                right: bad.modulus().p(),
            });
        }
        let n: usize = factors.iter().map(GroupPresentation::dim).sum();
        let mut names = Vec::new();
        let mut equations = Vec::new();
        let mut inverted = Vec::new();
        let mut mul = Vec::new();
        let mut inv = Vec::new();
        let mut identity = Vec::new();
        let mut offset = 0;
        for (k, g) in factors.iter().enumerate() {
            let nf = g.dim();
            names.extend(
                g.variety
                    .var_names()
                    .iter()
                    .map(|v| format!("{v}{}", k + 1)),
            );
            let lift = |f: &MultiPoly| f.remap(n, |i| offset + i);
            equations.extend(g.variety.equations().iter().map(lift));
            inverted.extend(g.variety.inverted().iter().map(lift));
            mul.extend(g.mul.components().iter().map(|c| {
                c.remap(2 * n, |i| {
                    if i < nf {
                        offset + i
                    } else {
                        n + offset + i - nf
                    }
                })
            }));
            inv.extend(
                g.inv
                    .components()
                    .iter()
                    .map(|c| c.remap(n, |i| offset + i)),
            );
            identity.extend(g.identity.iter().cloned());
            offset += nf;
        }
        let name = factors
            .iter()
            .map(|g| g.name.as_str())
            .collect::<Vec<_>>()
            .join("*");
        let kind = GroupKind::Product(factors.iter().map(|g| g.kind.clone()).collect());
        let variety = VarietyPresentation::new(modulus, names, equations, inverted)?;
        Self::with_kind(
            name,
            kind,
            variety,
            PolyMap::new(2 * n, mul)?,
            PolyMap::new(n, inv)?,
            identity,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn modulus(&self) -> Modulus {
        self.variety.modulus()
    }

    pub fn dim(&self) -> usize {
        self.variety.n_vars()
    }

    pub fn variety(&self) -> &VarietyPresentation {
        &self.variety
    }

    pub fn mul_map(&self) -> &PolyMap {
        &self.mul
    }

    pub fn inv_map(&self) -> &PolyMap {
        &self.inv
    }

    pub fn identity(&self) -> &[RatFunc] {
        &self.identity
    }

    pub fn contains(&self, g: &[RatFunc]) -> Result<bool> {
        self.variety.contains(g)
    }

    pub fn mul_points(&self, g: &[RatFunc], h: &[RatFunc]) -> Result<Vec<RatFunc>> {
        self.variety.require(g)?;
        self.variety.require(h)?;
        let joined: Vec<RatFunc> = g.iter().chain(h).cloned().collect();
        self.mul.apply(&joined)
    }

    pub fn inv_point(&self, g: &[RatFunc]) -> Result<Vec<RatFunc>> {
        self.variety.require(g)?;
        self.inv.apply(g)
    }

    /// Whether every coordinate of `g` lies in F_p, decided by the
    /// derivation's constancy test.
    pub fn is_constant_point(&self, g: &[RatFunc]) -> bool {
        let d = HSDerivation::new(self.modulus());
        g.iter().all(|x| d.is_constant(x).is_constant)
    }
}

/// Associativity, identity and inverse laws on the given points.
pub fn check_group_axioms(
    g: &GroupPresentation,
    a: &[RatFunc],
    b: &[RatFunc],
    c: &[RatFunc],
) -> Result<bool> {
    let e = g.identity();
    let assoc = g.mul_points(&g.mul_points(a, b)?, c)? == g.mul_points(a, &g.mul_points(b, c)?)?;
    let ident = g.mul_points(a, e)? == a && g.mul_points(e, a)? == a;
    let a_inv = g.inv_point(a)?;
    let inverse = g.mul_points(a, &a_inv)? == e && g.mul_points(&a_inv, a)? == e;
    Ok(assoc && ident && inverse)
}

/// A validated point of `A_m G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcGroupElement(ArcPoint);

impl ArcGroupElement {
    pub fn point(&self) -> &ArcPoint {
        &self.0
    }

    pub fn into_point(self) -> ArcPoint {
        self.0
    }

    pub fn base_point(&self) -> Vec<RatFunc> {
        self.0.base_point()
    }

    pub fn level(&self) -> usize {
        self.0.level()
    }
}

impl std::fmt::Display for ArcGroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Outcome of the kernel test at one truncation level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KernelVerdict {
    pub level: usize,
    /// `ℓD_m(g)` is the identity arc.
    pub log_derivative_trivial: bool,
    /// Every coordinate of `g` is constant.
    pub point_constant: bool,
}

impl KernelVerdict {
    /// `ℓD_m(g) = e ⟺ g ∈ G(F_p)`. Can fail at low levels: `t^p` on `G_a`
    /// has trivial `ℓD_m` for every `m < p`.
    pub fn agrees(&self) -> bool {
        self.log_derivative_trivial == self.point_constant
    }
}

/// `A_m G` with the group law `A_m(·)`.
#[derive(Clone, Debug)]
pub struct ArcGroup {
    group: GroupPresentation,
    level: usize,
    arc_variety: ArcVariety,
}

impl ArcGroup {
    pub fn new(group: &GroupPresentation, level: usize) -> Self {
        ArcGroup {
            arc_variety: prolong_variety(&group.variety, level),
            group: group.clone(),
            level,
        }
    }

    pub fn group(&self) -> &GroupPresentation {
        &self.group
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn arc_variety(&self) -> &ArcVariety {
        &self.arc_variety
    }

    /// Validates membership in `A_m G`.
    pub fn element(&self, point: ArcPoint) -> Result<ArcGroupElement> {
        self.arc_variety.require(&point)?;
        Ok(ArcGroupElement(point))
    }

    fn check(&self, x: &ArcGroupElement) -> Result<()> {
        self.arc_variety.require(&x.0)
    }

    /// `A_m(·)` as a map in `2 n (m + 1)` arc coordinates. The first operand
    /// occupies the first `n (m + 1)` coordinates.
    pub fn prolonged_mul(&self) -> PolyMap {
        self.group.mul.prolong(self.level)
    }

    pub fn prolonged_inv(&self) -> PolyMap {
        self.group.inv.prolong(self.level)
    }

    pub fn identity(&self) -> ArcGroupElement {
        ArcGroupElement(ArcPoint::constant(&self.group.identity, self.level))
    }

    /// `a · b` in `A_m G`: the group law evaluated over `k^(m)`.
    pub fn arc_mul(&self, a: &ArcGroupElement, b: &ArcGroupElement) -> Result<ArcGroupElement> {
        self.check(a)?;
        self.check(b)?;
        let joined = a.0.join(&b.0)?;
        Ok(ArcGroupElement(apply_to_arc(&self.group.mul, &joined)?))
    }

    pub fn arc_inv(&self, a: &ArcGroupElement) -> Result<ArcGroupElement> {
        self.check(a)?;
        Ok(ArcGroupElement(apply_to_arc(&self.group.inv, &a.0)?))
    }

    /// `s(g) = (g, 0, ..., 0)`.
    pub fn section(&self, g: &[RatFunc]) -> Result<ArcGroupElement> {
        self.group.variety.require(g)?;
        Ok(ArcGroupElement(ArcPoint::constant(g, self.level)))
    }

    /// `h(x) = x · s(g^{-1})` where `g` is the base point of `x`.
    pub fn split(&self, x: &ArcGroupElement) -> Result<ArcGroupElement> {
        let g_inv = self.group.inv_point(&x.base_point())?;
        self.arc_mul(x, &self.section(&g_inv)?)
    }

    pub fn is_identity(&self, x: &ArcGroupElement) -> bool {
        *x == self.identity()
    }

    /// If `h(x) = h(y)` then `h(x^{-1} y)` is the identity arc; vacuously
    /// true otherwise.
    pub fn check_fact_key(&self, x: &ArcGroupElement, y: &ArcGroupElement) -> Result<bool> {
        if self.split(x)? != self.split(y)? {
            return Ok(true);
        }
        let q = self.arc_mul(&self.arc_inv(x)?, y)?;
        Ok(self.is_identity(&self.split(&q)?))
    }

    /// `∇(g)`, checked to lie in `A_m G`.
    pub fn nabla(&self, g: &[RatFunc]) -> Result<ArcGroupElement> {
        Ok(ArcGroupElement(nabla(&self.group.variety, g, self.level)?))
    }

    /// `ℓD(g) = h(∇(g))`, an element of the fiber over the identity.
    pub fn log_derivative(&self, g: &[RatFunc]) -> Result<ArcGroupElement> {
        let out = self.split(&self.nabla(g)?)?;
        if out.base_point() != self.group.identity {
            return Err(Error::Consistency("ℓD(g) left the identity fiber".into()));
        }
        Ok(out)
    }

    pub fn kernel_verdict(&self, g: &[RatFunc]) -> Result<KernelVerdict> {
        let ld = self.log_derivative(g)?;
        Ok(KernelVerdict {
            level: self.level,
            log_derivative_trivial: self.is_identity(&ld),
            point_constant: self.group.is_constant_point(g),
        })
    }

    /// `∇(g · h) = ∇(g) · ∇(h)`, and `∇(g) ≠ ∇(h)` whenever `g ≠ h`.
    pub fn check_nabla_embedding(&self, g: &[RatFunc], h: &[RatFunc]) -> Result<bool> {
        let lhs = self.nabla(&self.group.mul_points(g, h)?)?;
        let (ng, nh) = (self.nabla(g)?, self.nabla(h)?);
        let rhs = self.arc_mul(&ng, &nh)?;
        let injective = g == h || ng != nh;
        Ok(lhs == rhs && injective)
    }
}

/// Smallest level `m ≤ max_level` at which `ℓD_m(g)` is not the identity.
pub fn first_detecting_level(
    group: &GroupPresentation,
    g: &[RatFunc],
    max_level: usize,
) -> Result<Option<usize>> {
    for level in 1..=max_level {
        let ag = ArcGroup::new(group, level);
        if !ag.is_identity(&ag.log_derivative(g)?) {
            return Ok(Some(level));
        }
    }
    Ok(None)
}

/// `ℓD` on `G_m` via series arithmetic, `D(g) · g^{-1}`; agrees with
/// [`ArcGroup::log_derivative`] on `G_m`.
pub fn gm_log_series(g: &RatFunc, level: usize) -> Option<ArcPoint> {
    let d = HSDerivation::new(g.modulus());
    let s = d.log_series(g, level)?;
    ArcPoint::new(level, vec![s]).ok()
}

/// All points of `G(F_p)` for the builtin groups (small `p` only).
pub fn constant_points(group: &GroupPresentation) -> Option<Vec<Vec<RatFunc>>> {
    let m = group.modulus();
    let p = m.p();
    let c = |v: u64| RatFunc::constant(m, v);
    Some(match group.kind() {
        GroupKind::Additive => (0..p).map(|v| vec![c(v)]).collect(),
        GroupKind::Multiplicative => (1..p).map(|v| vec![c(v)]).collect(),
        GroupKind::Affine => (1..p)
            .flat_map(|a| (0..p).map(move |b| vec![c(a), c(b)]))
            .collect(),
        GroupKind::Product(_) | GroupKind::Custom => return None,
    })
}

impl ArcGroup {
    /// Whether `x` lies over the identity.
    pub fn in_identity_fiber(&self, x: &ArcGroupElement) -> bool {
        x.base_point() == self.group.identity
    }

    /// Zero arc in the fiber over `e`, i.e. the identity as a plain point.
    pub fn identity_point(&self) -> ArcPoint {
        self.identity().into_point()
    }
}
