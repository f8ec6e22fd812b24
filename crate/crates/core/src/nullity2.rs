//! Loop forms of simple adjoint groups over the Laurent polynomial ring in
//! two variables, and their classification over the base field.
//!
//! A form is a Dynkin-Tits class (a commuting pair in Out up to conjugacy)
//! together with a class in the second cohomology of the center twisted by
//! that pair, taken modulo the centralizer of the pair in Out.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::catalog::{lookup, table_entry, CenterDatum, ClassRow, CosetInvariant, FormKind, SimpleType};
use crate::cohomology::{induced_map, koszul_cohomology, top_degree_pullback, CohomologyGroup, ZnModule};
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::linalg::{glnz_generators, FinAb, FinAbHom, IntMatrix, ModMatrix};
use crate::loops::{classify_commuting_tuples, glnz_orbit_partition, LoopClass};

/// Image of a loop cocycle in H^1(R_2, Out(G)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinTitsClass {
    pub out_hom: LoopClass,
    pub kind: FormKind,
    /// `kind(i,j)`: the pair is `(h^i, h^j)` for the least generator `h` of its image.
    pub label: String,
}

impl DynkinTitsClass {
    fn new(out_hom: LoopClass) -> Self {
        let g = out_hom.target().clone();
        let image = out_hom.image();
        let kind = match image.len() {
            1 => FormKind::Inner,
            2 => FormKind::Quadratic,
            _ => FormKind::Cubic,
        };
        let label = if kind == FormKind::Inner {
            "split".to_string()
        } else {
            let h = image
                .iter()
                .copied()
                .find(|&h| g.subgroup_generated(&[h]).len() == image.len())
                .expect("commuting pairs in Out generate a cyclic group");
            let exps: Vec<String> = out_hom
                .tuple()
                .iter()
                .map(|&x| (0..image.len() as i64).find(|&e| g.pow(h, e) == x).expect("in image").to_string())
                .collect();
            format!("{kind}({})", exps.join(","))
        };
        DynkinTitsClass { out_hom, kind, label }
    }
}

/// A loop R_2-form: a Dynkin-Tits class and an orbit in the fiber over it.
#[derive(Clone, Debug)]
pub struct LoopFormR2 {
    pub absolute: SimpleType,
    pub dynkin_tits: DynkinTitsClass,
    /// The fiber group H^2(R_2, twisted center).
    pub h2_group: FinAb,
    /// Least element (in enumeration order) of the orbit, as coordinates in `h2_group`.
    pub h2_rep: Vec<i64>,
    /// Number of elements of `h2_group` in the orbit.
    pub orbit_size: usize,
    pub quasisplit: bool,
    invariant: CosetInvariant,
}

impl LoopFormR2 {
    pub fn invariant(&self) -> &CosetInvariant {
        &self.invariant
    }

    pub fn record(&self) -> FormRecord {
        FormRecord {
            absolute: self.absolute.to_string(),
            dynkin_tits: self.dynkin_tits.label.clone(),
            out_pair: self.dynkin_tits.out_hom.tuple().to_vec(),
            h2_group: self.h2_group.to_string(),
            h2_rep: self.h2_rep.clone(),
            orbit_size: self.orbit_size,
            quasisplit: self.quasisplit,
            name: None,
            tits_index: None,
            relative: None,
        }
    }
}

/// A classified form over k, joined with its table row.
#[derive(Clone, Debug)]
pub struct LoopFormK {
    pub form: LoopFormR2,
    pub row: ClassRow,
}

impl LoopFormK {
    pub fn record(&self) -> FormRecord {
        let mut r = self.form.record();
        r.name = Some(self.row.name.clone());
        r.tits_index = Some(self.row.tits_index.clone());
        r.relative = Some(self.row.relative.clone());
        r
    }
}

/// Flat serializable view of a form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormRecord {
    pub absolute: String,
    pub dynkin_tits: String,
    pub out_pair: Vec<usize>,
    pub h2_group: String,
    pub h2_rep: Vec<i64>,
    pub orbit_size: usize,
    pub quasisplit: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tits_index: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relative: Option<String>,
}

/// The fiber over a Dynkin-Tits class: the twisted module and its H^2.
struct Fiber {
    module: ZnModule,
    h2: CohomologyGroup,
}

fn twisted_module(datum: &CenterDatum, pair: &[usize]) -> Result<ZnModule> {
    ZnModule::new(datum.center.clone(), pair.iter().map(|&x| datum.action[x].clone()).collect())
}

fn fiber(datum: &CenterDatum, class: &LoopClass) -> Result<Fiber> {
    let module = twisted_module(datum, class.tuple())?;
    let h2 = koszul_cohomology(&module, 2)?;
    Ok(Fiber { module, h2 })
}

/// Orbits of a set of automorphisms on the elements of `g`, each sorted by
/// enumeration index; orbits ordered by least element.
fn orbits(g: &FinAb, maps: &[FinAbHom]) -> Vec<Vec<usize>> {
    let n = g.order() as usize;
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let cx = g.coords_at(x);
            for f in maps {
                let y = g.index_of(&f.apply_coords(&cx));
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

fn invariant_of(datum: &CenterDatum, kind: FormKind, f: &Fiber, orbit: &[usize]) -> CosetInvariant {
    let g = f.h2.group();
    let rep = g.coords_at(orbit[0]);
    let order = g.element(&rep).expect("coordinates of the right length").order();
    let cochain = f.h2.representative(&rep);
    let out_fixed = kind != FormKind::Inner
        || datum.out.elements().all(|u| cochain.iter().all(|x| f.h2.class_of(&[datum.action[u].apply_coords(x)]).ok() == Some(rep.clone())));
    // for an inner class over a cyclic center, the least center element in the orbit
    let param = (kind == FormKind::Inner && datum.center.rank() <= 1).then(|| {
        orbit
            .iter()
            .map(|&i| f.h2.representative(&g.coords_at(i))[0].first().copied().unwrap_or(0))
            .min()
            .unwrap_or(0)
    });
    CosetInvariant { kind, is_zero: orbit[0] == 0, order, out_fixed, param }
}

fn form(
    t: SimpleType,
    datum: &CenterDatum,
    dt: &DynkinTitsClass,
    f: &Fiber,
    orbit: &[usize],
) -> LoopFormR2 {
    let g = f.h2.group();
    LoopFormR2 {
        absolute: t,
        dynkin_tits: dt.clone(),
        h2_group: g.clone(),
        h2_rep: g.coords_at(orbit[0]),
        orbit_size: orbit.len(),
        quasisplit: orbit[0] == 0,
        invariant: invariant_of(datum, dt.kind, f, orbit),
    }
}

/// Loop R_2-forms of the adjoint group of type `t`.
pub fn classify_r2(t: SimpleType) -> Result<Vec<LoopFormR2>> {
    let datum = lookup(t)?;
    let mut out = Vec::new();
    for class in classify_commuting_tuples(&datum.out, 2) {
        let dt = DynkinTitsClass::new(class.clone());
        let f = fiber(&datum, &class)?;
        let maps: Vec<FinAbHom> = datum
            .out
            .centralizer(class.tuple())
            .into_iter()
            .map(|u| induced_map(&f.module, &f.module, &datum.action[u], 2))
            .collect::<Result<_>>()?;
        for orbit in orbits(f.h2.group(), &maps) {
            out.push(form(t, &datum, &dt, &f, &orbit));
        }
    }
    Ok(out)
}

/// Integer representatives of the image of GL_2(Z) in GL_2(Z/m) x {det = ±1}.
fn glnz_image(m: i64) -> Vec<IntMatrix> {
    let gens = glnz_generators(2);
    let key = |g: &IntMatrix| (ModMatrix::from_int(g, m.max(1)), g.det().expect("square") > 0.into());
    let id = IntMatrix::identity(2);
    let mut seen: HashMap<(ModMatrix, bool), ()> = HashMap::from([(key(&id), ())]);
    let mut reps = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = &x * g;
            if seen.insert(key(&y), ()).is_none() {
                reps.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    reps
}

fn exponent(g: &FiniteGroup) -> i64 {
    g.elements().fold(1i64, |acc, x| num_integer::lcm(acc, g.element_order(x) as i64))
}

/// Two-loop algebras over k of type `t`: GL_2(Z)-orbits of the loop R_2-forms,
/// each joined with its table row.
pub fn classify_k(t: SimpleType) -> Result<Vec<LoopFormK>> {
    let datum = lookup(t)?;
    let out: &Arc<FiniteGroup> = &datum.out;
    let classes = classify_commuting_tuples(out, 2);
    let image = glnz_image(exponent(out));
    let mut result = Vec::new();
    for orbit_classes in glnz_orbit_partition(&classes, 2)? {
        let phi = &orbit_classes[0];
        let dt = DynkinTitsClass::new(phi.clone());
        let f = fiber(&datum, phi)?;
        // pairs (g, u) with phi∘g = u phi u^{-1} act on the fiber by (u^{-1})_* ∘ g^*
        let mut maps = Vec::new();
        for g in &image {
            let moved = phi.act(g)?;
            let pulled = top_degree_pullback(&f.module, g)?;
            let target = f.module.base_change(g)?;
            for u in out.elements() {
                let conj: Vec<usize> = phi.tuple().iter().map(|&x| out.conjugate(u, x)).collect();
                if conj != moved.tuple() {
                    continue;
                }
                let back = induced_map(&target, &f.module, &datum.action[out.inv(u)], 2)?;
                maps.push(back.compose(&pulled)?);
            }
        }
        for orbit in orbits(f.h2.group(), &maps) {
            let form = form(t, &datum, &dt, &f, &orbit);
            let (pos, row) = table_entry(t, form.invariant())?;
            result.push((pos, form.invariant().param, LoopFormK { form, row }));
        }
    }
    // table order: by template, then by the inner parameter
    result.sort_by_key(|(pos, param, _)| (*pos, *param));
    Ok(result.into_iter().map(|(_, _, c)| c).collect())
}

/// Ranks at which the nullity-2 table is emitted by default.
pub fn default_table_types() -> Vec<SimpleType> {
    [
        "A1", "A2", "A3", "A4", "A5", "B2", "B3", "C3", "C4", "C5", "D4", "D5", "D6", "D7", "D8", "E6", "E7", "E8",
        "F4", "G2",
    ]
    .iter()
    .map(|s| s.parse().expect("legal type"))
    .collect()
}

/// One table row per class over k, for each requested type.
pub fn eala_table(types: &[SimpleType]) -> Result<Vec<ClassRow>> {
    let mut rows = Vec::new();
    for &t in types {
        rows.extend(classify_k(t)?.into_iter().map(|c| c.row));
    }
    Ok(rows)
}
