//! The JSON file format: one object per file, tagged by `kind`.
//!
//! Coefficients are reduced rational strings `"p/q"` (plain integers are
//! accepted on load). Maps are lists of entries
//! `{inputs: [labels], element?: label, output: [{label, coeff}]}` where a
//! tensor output label joins its factors with `⊗` and the ground field is
//! written `1`. Objects that live over an algebra reference its file by a
//! path relative to their own file; representation slots also accept the
//! built-in names `adjoint` and `trivial`, and tensor products of slots
//! written `a⊗b` (or `a*b`).

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::ce::{CEAlgebra, CEModule};
use crate::error::{Error, Result};
use crate::graded::{skew_normalize, Factors, GradedSpace, Key, Space, Tensor};
use crate::linfty::LInfinityAlgebra;
use crate::poisson::ShiftedPoissonStructure;
use crate::rational::Rational;
use crate::repcat::{adjoint, tensor_all, trivial, Intertwiner, Representation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisElement {
    pub label: String,
    pub degree: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub label: String,
    pub coeff: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub inputs: Vec<String>,
    /// Module slot, for action and intertwiner components.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<String>,
    pub output: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub name: String,
    pub basis: Vec<BasisElement>,
    #[serde(default)]
    pub brackets: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub name: String,
    pub basis: Vec<BasisElement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationDoc {
    pub algebra: String,
    pub module: ModuleDoc,
    #[serde(default)]
    pub action: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoissonEntry {
    pub weight: usize,
    pub inputs: Vec<String>,
    pub output: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoissonDoc {
    pub algebra: String,
    pub shift: i32,
    #[serde(default)]
    pub components: Vec<PoissonEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntertwinerDoc {
    pub algebra: String,
    pub source: String,
    pub target: String,
    pub degree: i32,
    #[serde(default)]
    pub components: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CeTerm {
    pub monomial: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<String>,
    pub coeff: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CeDifferential {
    pub generator: String,
    pub value: Vec<CeTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CeModuleDoc {
    pub name: String,
    pub generators: Vec<BasisElement>,
    /// Word lengths through which the table is exact.
    pub exact_through: usize,
    pub differential: Vec<CeDifferential>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CeDoc {
    pub algebra: String,
    pub word_cap: usize,
    pub generators: Vec<BasisElement>,
    pub differential: Vec<CeDifferential>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<CeModuleDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    Algebra(AlgebraDoc),
    Representation(RepresentationDoc),
    Poisson(PoissonDoc),
    Intertwiner(IntertwinerDoc),
    CePresentation(CeDoc),
}

/// A validated object read from disk.
#[derive(Clone, Debug)]
pub enum Instance {
    Algebra(LInfinityAlgebra),
    Representation {
        alg: LInfinityAlgebra,
        rep: Representation,
    },
    Poisson {
        alg: LInfinityAlgebra,
        sps: ShiftedPoissonStructure,
    },
    Intertwiner {
        alg: LInfinityAlgebra,
        source: Representation,
        target: Representation,
        map: Intertwiner,
    },
}

impl Instance {
    pub fn algebra(&self) -> &LInfinityAlgebra {
        match self {
            Instance::Algebra(a) => a,
            Instance::Representation { alg, .. }
            | Instance::Poisson { alg, .. }
            | Instance::Intertwiner { alg, .. } => alg,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Algebra(_) => "algebra",
            Instance::Representation { .. } => "representation",
            Instance::Poisson { .. } => "poisson",
            Instance::Intertwiner { .. } => "intertwiner",
        }
    }
}

/// A loaded object, the files it was read from (the named file first) and
/// any warnings raised while normalizing it.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub instance: Instance,
    pub files: Vec<PathBuf>,
    pub warnings: Vec<String>,
}

/// Parse the document in `path` without resolving its references.
pub fn read_document(path: &Path) -> Result<Document> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| match e {
        Error::Schema(m) => Error::Schema(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn parse_document(text: &str) -> Result<Document> {
    serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        if msg.contains("malformed rational") {
            Error::MalformedRational(msg)
        } else {
            Error::Schema(msg)
        }
    })
}

pub fn to_json(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn save(doc: &Document, path: &Path) -> Result<()> {
    fs::write(path, to_json(doc)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn space_of(name: &str, basis: &[BasisElement]) -> Result<Space> {
    Ok(GradedSpace::new(name, basis.iter().map(|b| (b.label.clone(), b.degree)))?.into_space())
}

fn basis_of(s: &Space) -> Vec<BasisElement> {
    s.labels()
        .iter()
        .zip(s.degrees())
        .map(|(l, &d)| BasisElement {
            label: l.clone(),
            degree: d,
        })
        .collect()
}

fn parse_labels(s: &Space, labels: &[String]) -> Result<Key> {
    labels.iter().map(|l| s.index_of(l)).collect()
}

fn parse_element(f: &Factors, label: Option<&str>) -> Result<Key> {
    match label {
        None | Some("1") if f.is_empty() => Ok(Key::new()),
        None => Err(Error::Schema("component without an `element`".into())),
        Some(l) => f.parse_key(&split_label(l)),
    }
}

fn split_label(l: &str) -> Vec<&str> {
    if l == "1" {
        Vec::new()
    } else {
        l.split('⊗').collect()
    }
}

fn parse_output(f: &Factors, terms: &[Term]) -> Result<Tensor> {
    let mut t = Tensor::new();
    for term in terms {
        t.add_term(f.parse_key(&split_label(&term.label))?, &term.coeff);
    }
    Ok(t)
}

fn render_label(f: &Factors, key: &[u16]) -> String {
    if key.is_empty() {
        "1".into()
    } else {
        f.labels(key).join("⊗")
    }
}

fn output_terms(f: &Factors, t: &Tensor) -> Vec<Term> {
    t.iter()
        .map(|(k, c)| Term {
            label: render_label(f, k),
            coeff: c.clone(),
        })
        .collect()
}

fn check_canonical(g: &Space, inputs: &Key, labels: &[String], warnings: &mut Vec<String>) {
    if let Some((canon, _)) = skew_normalize(g, inputs) {
        if canon != *inputs {
            warnings.push(format!(
                "inputs ({}) are not in canonical order; normalized to ({})",
                labels.join(","),
                g.render(&canon)
            ));
        }
    } else {
        warnings.push(format!(
            "inputs ({}) repeat an even-shifted label; the entry is zero",
            labels.join(",")
        ));
    }
}

/// Build an algebra from its document.
pub fn algebra_from(doc: &AlgebraDoc, warnings: &mut Vec<String>) -> Result<LInfinityAlgebra> {
    let g = space_of(&doc.name, &doc.basis)?;
    let gf = Factors::single(g.clone());
    let mut alg = LInfinityAlgebra::abelian(doc.name.clone(), g.clone());
    for e in &doc.brackets {
        if e.element.is_some() {
            return Err(Error::Schema("bracket entries take no `element`".into()));
        }
        if e.inputs.is_empty() {
            return Err(Error::Schema("brackets have arity at least 1".into()));
        }
        let x = parse_labels(&g, &e.inputs)?;
        check_canonical(&g, &x, &e.inputs, warnings);
        alg.add_bracket_value(&x, &parse_output(&gf, &e.output)?)?;
    }
    Ok(alg)
}

pub fn algebra_document(alg: &LInfinityAlgebra) -> Document {
    let g = alg.space();
    let gf = alg.g_factors();
    let mut brackets = Vec::new();
    for (_, m) in alg.brackets() {
        for (x, t) in m.entries() {
            brackets.push(Entry {
                inputs: g.labels_of(x),
                element: None,
                output: output_terms(&gf, t),
            });
        }
    }
    Document::Algebra(AlgebraDoc {
        name: alg.name().to_string(),
        basis: basis_of(g),
        brackets,
    })
}

fn family_entries(f: &Intertwiner) -> Vec<Entry> {
    let g = f.g();
    let mut out = Vec::new();
    for (&i, m) in f.components() {
        for (key, t) in m.entries() {
            let (x, u) = key.split_at(i - 1);
            out.push(Entry {
                inputs: g.labels_of(x),
                element: Some(render_label(f.source(), u)),
                output: output_terms(f.target(), t),
            });
        }
    }
    out
}

fn fill_family(f: &mut Intertwiner, entries: &[Entry], warnings: &mut Vec<String>) -> Result<()> {
    let g = f.g().clone();
    let (src, tgt) = (f.source().clone(), f.target().clone());
    for e in entries {
        let x = parse_labels(&g, &e.inputs)?;
        check_canonical(&g, &x, &e.inputs, warnings);
        let u = parse_element(&src, e.element.as_deref())?;
        f.add_value(&x, &u, &parse_output(&tgt, &e.output)?)?;
    }
    Ok(())
}

pub fn representation_from(
    doc: &RepresentationDoc,
    alg: &LInfinityAlgebra,
    warnings: &mut Vec<String>,
) -> Result<Representation> {
    let v = Factors::single(space_of(&doc.module.name, &doc.module.basis)?);
    let mut rho = Intertwiner::zero(alg.space(), v.clone(), v, 1);
    fill_family(&mut rho, &doc.action, warnings)?;
    Representation::new(doc.module.name.clone(), rho)
}

/// The document of a representation on a single module space, referring to
/// its algebra by `algebra_ref`.
pub fn representation_document(rep: &Representation, algebra_ref: &str) -> Result<Document> {
    if rep.factors().len() != 1 {
        return Err(Error::Invalid(
            "only representations on a single module space can be saved".into(),
        ));
    }
    Ok(Document::Representation(RepresentationDoc {
        algebra: algebra_ref.to_string(),
        module: ModuleDoc {
            name: rep.name().to_string(),
            basis: basis_of(rep.factors().factor(0)),
        },
        action: family_entries(rep.rho()),
    }))
}

pub fn poisson_from(
    doc: &PoissonDoc,
    alg: &LInfinityAlgebra,
    warnings: &mut Vec<String>,
) -> Result<ShiftedPoissonStructure> {
    let g = alg.space();
    let mut sps = ShiftedPoissonStructure::new(alg, doc.shift);
    for e in &doc.components {
        let x = parse_labels(g, &e.inputs)?;
        check_canonical(g, &x, &e.inputs, warnings);
        let t = parse_output(&Factors::power(g, e.weight), &e.output)?;
        sps.add_value(e.weight, &x, &t)?;
    }
    Ok(sps)
}

pub fn poisson_document(sps: &ShiftedPoissonStructure, algebra_ref: &str) -> Document {
    let g = sps.space();
    let mut components = Vec::new();
    for (&(w, _), m) in sps.components() {
        for (x, t) in m.entries() {
            components.push(PoissonEntry {
                weight: w,
                inputs: g.labels_of(x),
                output: output_terms(&Factors::power(g, w), t),
            });
        }
    }
    Document::Poisson(PoissonDoc {
        algebra: algebra_ref.to_string(),
        shift: sps.shift(),
        components,
    })
}

pub fn intertwiner_document(
    f: &Intertwiner,
    algebra_ref: &str,
    source_ref: &str,
    target_ref: &str,
) -> Document {
    Document::Intertwiner(IntertwinerDoc {
        algebra: algebra_ref.to_string(),
        source: source_ref.to_string(),
        target: target_ref.to_string(),
        degree: f.degree(),
        components: family_entries(f),
    })
}

/// The CE presentation: generators `θ^α` with their degrees and `δ` on
/// each, plus the semi-free modules of the given representations.
pub fn ce_document(a: &CEAlgebra, modules: &[(&str, &CEModule)]) -> Document {
    let g = a.space();
    let theta =
        |m: &[u16]| -> Vec<String> { m.iter().map(|&i| format!("θ^{}", g.label(i))).collect() };
    let generators = (0..g.dim() as u16)
        .map(|i| BasisElement {
            label: format!("θ^{}", g.label(i)),
            degree: a.generator_degree(i),
        })
        .collect();
    let differential = (0..g.dim() as u16)
        .map(|i| CeDifferential {
            generator: format!("θ^{}", g.label(i)),
            value: a
                .delta_of_generator(i)
                .terms()
                .iter()
                .map(|(m, c)| CeTerm {
                    monomial: theta(m),
                    element: None,
                    coeff: c.clone(),
                })
                .collect(),
        })
        .collect();
    let modules = modules
        .iter()
        .map(|(name, md)| {
            let f = md.factors();
            CeModuleDoc {
                name: name.to_string(),
                generators: f
                    .basis()
                    .iter()
                    .map(|k| BasisElement {
                        label: render_label(f, k),
                        degree: f.degree(k),
                    })
                    .collect(),
                exact_through: md.exact_through(),
                differential: md
                    .table()
                    .iter()
                    .map(|(v, dv)| CeDifferential {
                        generator: render_label(f, v),
                        value: dv
                            .iter()
                            .map(|((m, w), c)| CeTerm {
                                monomial: theta(m),
                                element: Some(render_label(f, w)),
                                coeff: c.clone(),
                            })
                            .collect(),
                    })
                    .collect(),
            }
        })
        .collect();
    Document::CePresentation(CeDoc {
        algebra: a.algebra().name().to_string(),
        word_cap: a.word_cap(),
        generators,
        differential,
        modules,
    })
}

fn resolve(base: &Path, reference: &str) -> PathBuf {
    base.parent().unwrap_or(Path::new(".")).join(reference)
}

struct Loader {
    cap: usize,
    files: Vec<PathBuf>,
    warnings: Vec<String>,
}

impl Loader {
    fn algebra(&mut self, path: &Path) -> Result<LInfinityAlgebra> {
        match read_document(path)? {
            Document::Algebra(d) => {
                self.files.push(path.to_path_buf());
                let mut w = Vec::new();
                let a = algebra_from(&d, &mut w)?;
                self.note(path, w);
                Ok(a)
            }
            _ => Err(Error::Schema(format!(
                "{}: expected an algebra",
                path.display()
            ))),
        }
    }

    fn note(&mut self, path: &Path, w: Vec<String>) {
        self.warnings
            .extend(w.into_iter().map(|m| format!("{}: {m}", path.display())));
    }

    fn representation(
        &mut self,
        base: &Path,
        reference: &str,
        alg: &LInfinityAlgebra,
    ) -> Result<Representation> {
        let parts: Vec<&str> = reference.split(['⊗', '*']).map(str::trim).collect();
        if parts.len() > 1 {
            let reps = parts
                .iter()
                .map(|p| self.representation(base, p, alg))
                .collect::<Result<Vec<_>>>()?;
            return tensor_all(&reps.iter().collect::<Vec<_>>(), self.cap);
        }
        match reference {
            "adjoint" => return Ok(adjoint(alg)),
            "trivial" => return Ok(trivial(alg)),
            _ => {}
        }
        let path = resolve(base, reference);
        match self.instance(&path)? {
            Instance::Representation { alg: a, rep } if a.space() == alg.space() => Ok(rep),
            Instance::Representation { .. } => Err(Error::SpaceMismatch(format!(
                "{}: representation over a different algebra",
                path.display()
            ))),
            _ => Err(Error::Schema(format!(
                "{}: expected a representation",
                path.display()
            ))),
        }
    }

    fn instance(&mut self, path: &Path) -> Result<Instance> {
        let doc = read_document(path)?;
        self.files.push(path.to_path_buf());
        let mut w = Vec::new();
        let out = match doc {
            Document::Algebra(d) => Instance::Algebra(algebra_from(&d, &mut w)?),
            Document::Representation(d) => {
                let alg = self.algebra(&resolve(path, &d.algebra))?;
                let rep = representation_from(&d, &alg, &mut w)?;
                Instance::Representation { alg, rep }
            }
            Document::Poisson(d) => {
                let alg = self.algebra(&resolve(path, &d.algebra))?;
                let sps = poisson_from(&d, &alg, &mut w)?;
                Instance::Poisson { alg, sps }
            }
            Document::Intertwiner(d) => {
                let alg = self.algebra(&resolve(path, &d.algebra))?;
                let source = self.representation(path, &d.source, &alg)?;
                let target = self.representation(path, &d.target, &alg)?;
                let mut map = Intertwiner::zero(
                    alg.space(),
                    source.factors().clone(),
                    target.factors().clone(),
                    d.degree,
                );
                fill_family(&mut map, &d.components, &mut w)?;
                Instance::Intertwiner {
                    alg,
                    source,
                    target,
                    map,
                }
            }
            Document::CePresentation(_) => {
                return Err(Error::Schema(format!(
                    "{}: CE presentations are export-only",
                    path.display()
                )))
            }
        };
        self.note(path, w);
        Ok(out)
    }
}

/// Read and validate the object in `path`, following its references.
/// Tensor products of representations are formed through arity `cap`.
pub fn load_instance(path: &Path, cap: usize) -> Result<Loaded> {
    let mut l = Loader {
        cap,
        files: Vec::new(),
        warnings: Vec::new(),
    };
    let instance = l.instance(path)?;
    Ok(Loaded {
        instance,
        files: l.files,
        warnings: l.warnings,
    })
}

/// Resolve a representation slot (`adjoint`, `trivial` or a file path
/// relative to the working directory) over `alg`.
pub fn load_representation(reference: &str, alg: &LInfinityAlgebra, cap: usize) -> Result<Loaded> {
    let mut l = Loader {
        cap,
        files: Vec::new(),
        warnings: Vec::new(),
    };
    let rep = l.representation(Path::new("./"), reference, alg)?;
    Ok(Loaded {
        instance: Instance::Representation {
            alg: alg.clone(),
            rep,
        },
        files: l.files,
        warnings: l.warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn reload(doc: &Document) -> Document {
        parse_document(&to_json(doc)).unwrap()
    }

    #[test]
    fn algebra_round_trip() {
        let alg = fixtures::string_lie2();
        let doc = algebra_document(&alg);
        let Document::Algebra(d) = reload(&doc) else {
            panic!()
        };
        let mut w = Vec::new();
        let back = algebra_from(&d, &mut w).unwrap();
        assert!(w.is_empty());
        assert_eq!(back.space(), alg.space());
        assert_eq!(algebra_document(&back), doc);
        assert_eq!(back.space().dim(), 4);
    }

    #[test]
    fn rationals_are_strings() {
        let (_, sps) = fixtures::sl2_casimir();
        let json = to_json(&poisson_document(&sps, "sl2.json"));
        assert!(json.contains("\"coeff\": \"1/2\""), "{json}");
    }

    #[test]
    fn degree_inconsistent_entry_is_named() {
        let text = r#"{"kind":"algebra","name":"g","basis":[{"label":"a","degree":0},{"label":"b","degree":1}],
            "brackets":[{"inputs":["a","a"],"output":[{"label":"a","coeff":"1"}]},
                        {"inputs":["a"],"output":[{"label":"a","coeff":"1"}]}]}"#;
        let Document::Algebra(d) = parse_document(text).unwrap() else {
            panic!()
        };
        let e = algebra_from(&d, &mut Vec::new()).unwrap_err();
        assert!(
            matches!(e, Error::Degree { ref entry, .. } if entry == "(a)"),
            "{e}"
        );
    }

    #[test]
    fn empty_brackets_give_an_abelian_algebra() {
        let text =
            r#"{"kind":"algebra","name":"ab","basis":[{"label":"x","degree":1}],"brackets":[]}"#;
        let Document::Algebra(d) = parse_document(text).unwrap() else {
            panic!()
        };
        let a = algebra_from(&d, &mut Vec::new()).unwrap();
        assert_eq!(a.brackets().count(), 0);
    }

    #[test]
    fn noncanonical_inputs_warn_and_normalize() {
        let text = r#"{"kind":"algebra","name":"sl2","basis":[{"label":"e","degree":0},{"label":"f","degree":0},{"label":"h","degree":0}],
            "brackets":[{"inputs":["h","e"],"output":[{"label":"e","coeff":"2"}]}]}"#;
        let Document::Algebra(d) = parse_document(text).unwrap() else {
            panic!()
        };
        let mut w = Vec::new();
        let a = algebra_from(&d, &mut w).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(a.eval(&[0, 2]).get(&[0]), Rational::from_int(-2));
    }

    #[test]
    fn malformed_rational_and_schema_errors() {
        let bad = r#"{"kind":"algebra","name":"g","basis":[{"label":"a","degree":0}],
            "brackets":[{"inputs":["a"],"output":[{"label":"a","coeff":"1/0"}]}]}"#;
        assert!(matches!(
            parse_document(bad),
            Err(Error::MalformedRational(_))
        ));
        let extra = r#"{"kind":"algebra","name":"g","basis":[],"colour":1}"#;
        assert!(matches!(parse_document(extra), Err(Error::Schema(_))));
        let kind = r#"{"kind":"monoid","name":"g"}"#;
        assert!(matches!(parse_document(kind), Err(Error::Schema(_))));
    }

    #[test]
    fn representation_round_trip() {
        let alg = fixtures::dgla();
        let ad = adjoint(&alg);
        let doc = representation_document(&ad, "dgla.json").unwrap();
        let Document::Representation(d) = reload(&doc) else {
            panic!()
        };
        let back = representation_from(&d, &alg, &mut Vec::new()).unwrap();
        assert_eq!(
            back.rho().components().count(),
            ad.rho().components().count()
        );
        for (i, m) in ad.rho().components() {
            assert!(m.difference(back.rho().component(*i).unwrap()).is_empty());
        }
    }
}
