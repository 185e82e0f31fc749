//! The document format: named sets, maps, complexes, chain maps, and
//! staircase rows, serialized as canonical UTF-8 JSON.
//!
//! Canonical form: object keys sorted, element arrays sorted, numbers as
//! decimal integers, compact separators, trailing newline. Loading a file
//! and saving it back produces the canonical bytes, and saving is a fixed
//! point.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use ecgw::chain::{ChainComplex, ChainMapE, ChainMapM, Levels, MapKind, Window};
use ecgw::extcat::{Elem, FinSetInstance, FinSetObj, Injection, SetFun};
use ecgw::sdot::{staircase_build, Staircase};

/// Errors split by exit-code class: parse errors are usage-level (exit 2),
/// validation errors are property failures (exit 1).
#[derive(Debug)]
pub enum DocError {
    Parse(String),
    Validation(String),
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocError::Parse(m) => write!(f, "parse error: {m}"),
            DocError::Validation(m) => write!(f, "validation error: {m}"),
        }
    }
}

fn invalid(entity: &str, name: &str, err: impl fmt::Display) -> DocError {
    DocError::Validation(format!("{entity} `{name}`: {err}"))
}

// --- wire format -------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct DocumentJson {
    version: String,
    #[serde(default)]
    sets: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    maps: BTreeMap<String, MapJson>,
    #[serde(default)]
    complexes: BTreeMap<String, ComplexJson>,
    #[serde(default)]
    chain_maps: BTreeMap<String, ChainMapJson>,
    #[serde(default)]
    staircases: BTreeMap<String, StaircaseJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapJson {
    dom: String,
    cod: String,
    assign: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexJson {
    window: (i32, i32),
    #[serde(default)]
    degrees: BTreeMap<String, String>,
    #[serde(default)]
    images: BTreeMap<String, String>,
    #[serde(default)]
    diff: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainMapJson {
    kind: String,
    src: String,
    dst: String,
    #[serde(default)]
    f: BTreeMap<String, String>,
    #[serde(default)]
    fbar: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StaircaseJson {
    row: Vec<String>,
}

// --- resolved document ---------------------------------------------------------

/// Either role of a named chain map.
#[derive(Clone)]
pub enum AnyChainMap {
    M(ChainMapM<FinSetInstance>),
    E(ChainMapE<FinSetInstance>),
}

impl AnyChainMap {
    pub fn kind(&self) -> MapKind {
        match self {
            AnyChainMap::M(_) => MapKind::M,
            AnyChainMap::E(_) => MapKind::E,
        }
    }
}

/// A fully resolved and validated document.
pub struct Document {
    pub sets: BTreeMap<String, FinSetObj>,
    pub maps: BTreeMap<String, SetFun>,
    pub complexes: BTreeMap<String, ChainComplex<FinSetInstance>>,
    pub chain_maps: BTreeMap<String, AnyChainMap>,
    pub staircases: BTreeMap<String, (Vec<String>, Staircase<ecgw::cgw::ExtCgw<FinSetInstance>>)>,
    raw: DocumentJson,
}

fn parse_degree(key: &str) -> Result<i32, DocError> {
    key.parse::<i32>()
        .map_err(|_| DocError::Parse(format!("degree key `{key}` is not an integer")))
}

impl Document {
    pub fn from_str(text: &str) -> Result<Document, DocError> {
        let raw: DocumentJson =
            serde_json::from_str(text).map_err(|e| DocError::Parse(e.to_string()))?;
        if raw.version != "1" {
            return Err(DocError::Parse(format!(
                "unsupported version `{}`",
                raw.version
            )));
        }
        Document::resolve(raw)
    }

    pub fn load(path: &std::path::Path) -> Result<Document, DocError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| DocError::Parse(format!("{}: {e}", path.display())))?;
        Document::from_str(&text)
    }

    fn resolve(mut raw: DocumentJson) -> Result<Document, DocError> {
        let inst = FinSetInstance;
        let mut sets = BTreeMap::new();
        for (name, tokens) in &mut raw.sets {
            tokens.sort();
            let set = FinSetObj::new(tokens.iter().map(|t| Elem::new(t.clone())))
                .map_err(|e| invalid("set", name, e))?;
            sets.insert(name.clone(), set);
        }
        let lookup_set = |name: &str, wanted_by: &str| -> Result<FinSetObj, DocError> {
            sets.get(name).cloned().ok_or_else(|| {
                DocError::Validation(format!("{wanted_by} references unknown set `{name}`"))
            })
        };
        let mut maps = BTreeMap::new();
        for (name, m) in &raw.maps {
            let dom = lookup_set(&m.dom, &format!("map `{name}`"))?;
            let cod = lookup_set(&m.cod, &format!("map `{name}`"))?;
            let assign: BTreeMap<Elem, Elem> = m
                .assign
                .iter()
                .map(|(k, v)| (Elem::new(k.clone()), Elem::new(v.clone())))
                .collect();
            let fun =
                SetFun::from_pairs(dom, cod, &assign).map_err(|e| invalid("map", name, e))?;
            maps.insert(name.clone(), fun);
        }
        let lookup_map = |name: &str, wanted_by: &str| -> Result<SetFun, DocError> {
            maps.get(name).cloned().ok_or_else(|| {
                DocError::Validation(format!("{wanted_by} references unknown map `{name}`"))
            })
        };
        let mut complexes = BTreeMap::new();
        for (name, c) in &raw.complexes {
            let (lo, hi) = c.window;
            let window = Window::new(lo, hi)
                .map_err(|e| invalid("complex", name, e))?;
            let mut degrees = Vec::with_capacity(window.len());
            let mut images = Vec::with_capacity(window.len());
            let mut diffs = Vec::with_capacity(window.len());
            let pick = |table: &BTreeMap<String, String>, i: i32| -> Option<String> {
                table.get(&i.to_string()).cloned()
            };
            for key in c.degrees.keys().chain(c.images.keys()).chain(c.diff.keys()) {
                let i = parse_degree(key)?;
                if !window.contains(i) {
                    return Err(invalid(
                        "complex",
                        name,
                        format!("degree {i} outside the window [{lo},{hi}]"),
                    ));
                }
            }
            for i in window.iter() {
                let degree = match pick(&c.degrees, i) {
                    Some(s) => lookup_set(&s, &format!("complex `{name}` degree {i}"))?,
                    None => FinSetObj::empty(),
                };
                let image = match pick(&c.images, i) {
                    Some(s) => lookup_set(&s, &format!("complex `{name}` image {i}"))?,
                    None => FinSetObj::empty(),
                };
                let prev = degrees.last().cloned().unwrap_or_else(FinSetObj::empty);
                let diff = match pick(&c.diff, i) {
                    Some(m) => lookup_map(&m, &format!("complex `{name}` differential {i}"))?,
                    None if image.is_empty() => SetFun::from_empty(&prev),
                    None => {
                        return Err(invalid(
                            "complex",
                            name,
                            format!("missing differential at degree {i}"),
                        ))
                    }
                };
                degrees.push(degree);
                images.push(image);
                diffs.push(diff);
            }
            let complex = ChainComplex::new(&inst, window, degrees, images, diffs)
                .map_err(|e| invalid("complex", name, e))?;
            complexes.insert(name.clone(), complex);
        }
        let mut chain_maps = BTreeMap::new();
        for (name, m) in &raw.chain_maps {
            let src = complexes
                .get(&m.src)
                .cloned()
                .ok_or_else(|| invalid("chain map", name, format!("unknown complex `{}`", m.src)))?;
            let dst = complexes
                .get(&m.dst)
                .cloned()
                .ok_or_else(|| invalid("chain map", name, format!("unknown complex `{}`", m.dst)))?;
            let levels_of = |table: &BTreeMap<String, String>| -> Result<Levels, DocError> {
                let mut out = Levels::new();
                for (key, mapname) in table {
                    let i = parse_degree(key)?;
                    let fun = lookup_map(mapname, &format!("chain map `{name}` level {i}"))?;
                    let inj = Injection::new(fun).map_err(|e| invalid("chain map", name, e))?;
                    out.insert(i, inj);
                }
                Ok(out)
            };
            let f = levels_of(&m.f)?;
            let fbar = levels_of(&m.fbar)?;
            let resolved = match m.kind.as_str() {
                "m" => AnyChainMap::M(
                    ChainMapM::new(&inst, src, dst, &f, &fbar)
                        .map_err(|e| invalid("chain map", name, e))?,
                ),
                "e" => AnyChainMap::E(
                    ChainMapE::new(&inst, src, dst, &f, &fbar)
                        .map_err(|e| invalid("chain map", name, e))?,
                ),
                other => {
                    return Err(invalid(
                        "chain map",
                        name,
                        format!("kind must be \"m\" or \"e\", got `{other}`"),
                    ))
                }
            };
            chain_maps.insert(name.clone(), resolved);
        }
        let mut staircases = BTreeMap::new();
        let cgw = ecgw::cgw::ExtCgw::new(FinSetInstance, usize::MAX);
        for (name, s) in &raw.staircases {
            let mut row = Vec::with_capacity(s.row.len());
            for mapname in &s.row {
                let fun = lookup_map(mapname, &format!("staircase `{name}`"))?;
                let inj = Injection::new(fun).map_err(|e| invalid("staircase", name, e))?;
                let arrow = cgw
                    .mor(inj.dom().clone(), inj.cod().clone(), inj)
                    .map_err(|e| invalid("staircase", name, e))?;
                row.push(arrow);
            }
            let built =
                staircase_build(&cgw, &row).map_err(|e| invalid("staircase", name, e))?;
            staircases.insert(name.clone(), (s.row.clone(), built));
        }
        Ok(Document {
            sets,
            maps,
            complexes,
            chain_maps,
            staircases,
            raw,
        })
    }

    /// Canonical byte serialization.
    pub fn to_canonical_json(&self) -> String {
        let mut out = serde_json::to_string(&self.raw).expect("serializable");
        out.push('\n');
        out
    }

    pub fn save(&self, path: &std::path::Path) -> Result<(), DocError> {
        std::fs::write(path, self.to_canonical_json())
            .map_err(|e| DocError::Validation(format!("{}: {e}", path.display())))
    }
}

/// Renders a freshly computed complex and chain map as a canonical document
/// (used by the `chain coker` and `chain ker` outputs).
pub fn render_result_document(
    complex_name: &str,
    complex: &ChainComplex<FinSetInstance>,
    map_name: &str,
    kind: MapKind,
    levels: &Levels,
    bars: &Levels,
    dst_name: &str,
    dst: &ChainComplex<FinSetInstance>,
) -> String {
    let mut doc = DocumentJson {
        version: "1".to_string(),
        ..Default::default()
    };
    fn add_set(doc: &mut DocumentJson, name: String, tokens: &FinSetObj) {
        doc.sets
            .insert(name, tokens.iter().map(|e| e.to_string()).collect());
    }
    fn push_complex(doc: &mut DocumentJson, name: &str, x: &ChainComplex<FinSetInstance>) {
        let mut cj = ComplexJson {
            window: (x.window().lo, x.window().hi),
            degrees: BTreeMap::new(),
            images: BTreeMap::new(),
            diff: BTreeMap::new(),
        };
        add_set(
            doc,
            format!("{name}.X{}", x.window().lo - 1),
            &FinSetObj::empty(),
        );
        for i in x.window().iter() {
            add_set(doc, format!("{name}.X{i}"), x.degree(i));
            cj.degrees.insert(i.to_string(), format!("{name}.X{i}"));
            add_set(doc, format!("{name}.I{i}"), x.image(i));
            cj.images.insert(i.to_string(), format!("{name}.I{i}"));
            let d = x.diff(i);
            let mname = format!("{name}.d{i}");
            doc.maps.insert(
                mname.clone(),
                MapJson {
                    dom: format!("{name}.I{i}"),
                    cod: format!("{name}.X{}", i - 1),
                    assign: d
                        .pairs()
                        .map(|(a, b)| (a.to_string(), b.to_string()))
                        .collect(),
                },
            );
            cj.diff.insert(i.to_string(), mname);
        }
        doc.complexes.insert(name.to_string(), cj);
    }
    push_complex(&mut doc, complex_name, complex);
    push_complex(&mut doc, dst_name, dst);
    let mut cm = ChainMapJson {
        kind: match kind {
            MapKind::M => "m",
            MapKind::E => "e",
        }
        .to_string(),
        src: complex_name.to_string(),
        dst: dst_name.to_string(),
        f: BTreeMap::new(),
        fbar: BTreeMap::new(),
    };
    for (i, inj) in levels {
        let mname = format!("{map_name}.f{i}");
        doc.maps.insert(
            mname.clone(),
            MapJson {
                dom: format!("{complex_name}.X{i}"),
                cod: format!("{dst_name}.X{i}"),
                assign: inj
                    .fun()
                    .pairs()
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .collect(),
            },
        );
        cm.f.insert(i.to_string(), mname);
    }
    for (i, inj) in bars {
        let mname = format!("{map_name}.fbar{i}");
        doc.maps.insert(
            mname.clone(),
            MapJson {
                dom: format!("{complex_name}.I{i}"),
                cod: format!("{dst_name}.I{i}"),
                assign: inj
                    .fun()
                    .pairs()
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .collect(),
            },
        );
        cm.fbar.insert(i.to_string(), mname);
    }
    doc.chain_maps.insert(map_name.to_string(), cm);
    let mut out = serde_json::to_string(&doc).expect("serializable");
    out.push('\n');
    out
}
