//! Command dispatch for the `ribbon` tool. [`dispatch`] never touches the
//! process streams, so it can be driven directly from tests.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use ribbon_core::classify::{classify, CanonicalWord};
use ribbon_core::group::{homotopic, parse_group_spec, pi1_presentation, DiscretePath};
use ribbon_core::io::map_to_dot;
use ribbon_core::map::DartRef;
use ribbon_core::surface::{report, trace_faces};
use ribbon_core::word::parse_letters;
use ribbon_core::{
    are_isomorphic, cayley_ball, genus, is_trivial_word, petal, random_filling_map, Dart, Error,
    GraphDocument, RibbonMap,
};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        CommandResult { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn domain(err: impl std::fmt::Display) -> Self {
        CommandResult {
            code: EXIT_DOMAIN,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "ribbon", version, about = "Ribbon graphs and the surfaces they fill")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a map document and list every problem found
    Validate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Boundary words of the faces
    Faces {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Genus of the surface the map fills
    Genus {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// V, m, F, Euler characteristic, genus and face words
    Report {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Subdivide every edge; prints the new document
    Refine { file: PathBuf },
    /// Reduce to the normal form of the surface
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Orientation-preserving isomorphism test
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Fundamental group presentation from a spanning tree
    Pi1 {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        base: usize,
        #[arg(long)]
        json: bool,
    },
    /// Word problem in free:k, surface:g or zxz
    Trivial {
        #[arg(long)]
        group: String,
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Whether two paths are homotopic. Paths are dart tokens (`a+ b-`) or
    /// words in the edge labels (`aB`); an empty path stays at --base.
    Homotopic {
        file: PathBuf,
        p1: String,
        p2: String,
        #[arg(long, default_value_t = 0)]
        base: usize,
        #[arg(long)]
        json: bool,
    },
    /// Ball of the Cayley graph with relator cells
    Cayley {
        #[arg(long)]
        group: String,
        #[arg(long)]
        radius: usize,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Petal graph of genus g
    Petal { g: usize },
    /// Random map of the given genus
    Random {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        moves: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Graphviz rendering of a map
    EmitDot { file: PathBuf },
}

/// Runs one command line; `argv[0]` is the program name.
pub fn dispatch<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return CommandResult::ok(e.to_string());
            }
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            return CommandResult {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr: format!("{first}\nhint: run `ribbon --help` for usage\n"),
            };
        }
    };
    match run(cli.command) {
        Ok(out) => CommandResult::ok(out),
        Err(Failure::Invalid { issues, stdout }) => CommandResult {
            stdout,
            ..CommandResult::domain(Failure::Invalid { issues, stdout: String::new() })
        },
        Err(e) => CommandResult::domain(e),
    }
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Io(PathBuf, std::io::Error),
    /// Validation issues, with the report already rendered for `--json`.
    Invalid { issues: Vec<(String, String)>, stdout: String },
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(p, e) => write!(f, "{}: {e}", p.display()),
            Failure::Invalid { issues, .. } => {
                let lines: Vec<String> = issues.iter().map(|(c, m)| format!("[{c}] {m}")).collect();
                write!(f, "invalid map\n{}", lines.join("\n"))
            }
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.clone(), e))
}

fn load(path: &PathBuf) -> Result<RibbonMap, Failure> {
    Ok(GraphDocument::parse(&read(path)?)?.to_map()?)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn canonical_text(c: &CanonicalWord) -> String {
    match c {
        CanonicalWord::Sphere => "S0".to_string(),
        CanonicalWord::Polygon(w) => w.to_string(),
    }
}

fn parse_path(map: &RibbonMap, text: &str, base: usize) -> Result<DiscretePath, Error> {
    let text = text.trim();
    let darts: Vec<Dart> = if text.contains(['+', '-', '\u{2212}']) {
        text.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                let r = t.parse::<DartRef>().map_err(|()| Error::BadWord {
                    word: text.to_string(),
                    reason: format!("`{t}` is not a dart token"),
                })?;
                map.dart(&r)
            })
            .collect::<Result<_, _>>()?
    } else {
        parse_letters(text, map.labels())?
            .into_iter()
            .map(|l| {
                let k = map.edge_index(&l.label)?;
                Ok(if l.inverse { Dart::backward(k) } else { Dart::forward(k) })
            })
            .collect::<Result<_, Error>>()?
    };
    if darts.is_empty() {
        DiscretePath::new(map, base, darts)
    } else {
        DiscretePath::from_darts(map, darts)
    }
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Validate { file, json } => {
            let doc = GraphDocument::parse(&read(&file)?)?;
            let rotations: Vec<Vec<String>> =
                doc.vertices.iter().map(|v| v.rotation.clone()).collect();
            let report = RibbonMap::validate_rotation_lists(&doc.edges, &rotations);
            let stdout = if json {
                pretty(&serde_json::to_value(&report).expect("serializable"))
            } else {
                "ok\n".to_string()
            };
            if report.ok {
                Ok(stdout)
            } else {
                let stdout = if json { stdout } else { String::new() };
                Err(Failure::Invalid { issues: report.issues, stdout })
            }
        }
        Command::Faces { file, json } => {
            let map = load(&file)?;
            let words: Vec<String> = match trace_faces(&map) {
                Ok(faces) => faces.iter().map(|f| f.word(&map).to_string()).collect(),
                Err(_) => vec![String::new()],
            };
            if json {
                return Ok(pretty(&json!({ "faces": words })));
            }
            Ok(words
                .iter()
                .enumerate()
                .map(|(i, w)| format!("face {i}: {w}\n"))
                .collect())
        }
        Command::Genus { file, json } => {
            let g = genus(&load(&file)?)?;
            Ok(if json { pretty(&json!({ "genus": g })) } else { format!("genus: {g}\n") })
        }
        Command::Report { file, json } => {
            let r = report(&load(&file)?)?;
            if json {
                return Ok(pretty(&serde_json::to_value(&r).expect("serializable")));
            }
            let mut out = format!(
                "V: {}\nm: {}\nF: {}\nchi: {}\ngenus: {}\nfaces:\n",
                r.vertices, r.m, r.faces, r.chi, r.genus
            );
            for w in &r.face_words {
                out.push_str(&format!("  {w}\n"));
            }
            Ok(out)
        }
        Command::Refine { file } => {
            Ok(GraphDocument::from_map(&load(&file)?.refine()).to_canonical_string())
        }
        Command::Classify { file, json } => {
            let r = classify(&load(&file)?)?;
            if json {
                return Ok(pretty(&json!({
                    "genus": r.genus,
                    "canonical_word": canonical_text(&r.canonical_word),
                    "trace": r.trace,
                })));
            }
            Ok(format!(
                "genus: {}\ncanonical: {}\nmoves: {}\n",
                r.genus,
                canonical_text(&r.canonical_word),
                r.trace.len()
            ))
        }
        Command::Iso { a, b, json } => {
            let (ma, mb) = (load(&a)?, load(&b)?);
            let found = are_isomorphic(&ma, &mb);
            if json {
                let bijection = found.as_ref().map(|beta| {
                    ma.darts()
                        .map(|d| {
                            json!([ma.dart_ref(d).to_string(), mb.dart_ref(beta.apply(d)).to_string()])
                        })
                        .collect::<Vec<_>>()
                });
                return Ok(pretty(&json!({
                    "isomorphic": found.is_some(),
                    "bijection": bijection,
                })));
            }
            Ok(match found {
                Some(_) => "isomorphic\n".to_string(),
                None => "not isomorphic\n".to_string(),
            })
        }
        Command::Pi1 { file, base, json } => {
            let p = pi1_presentation(&load(&file)?, base)?;
            if json {
                let mut v = p.to_json();
                v["deficiency"] = json!(p.deficiency());
                return Ok(pretty(&v));
            }
            Ok(format!("{p}\n"))
        }
        Command::Trivial { group, word, json } => {
            let pres = parse_group_spec(&group)?;
            let w = pres.parse_word(&word)?;
            let trivial = is_trivial_word(&w, &pres)?;
            if json {
                return Ok(pretty(&json!({
                    "word": pres.format_word(&w),
                    "reduced": pres.format_word(&w.free_reduce()),
                    "trivial": trivial,
                })));
            }
            Ok(if trivial { "trivial\n" } else { "nontrivial\n" }.to_string())
        }
        Command::Homotopic { file, p1, p2, base, json } => {
            let map = load(&file)?;
            let (q1, q2) = (parse_path(&map, &p1, base)?, parse_path(&map, &p2, base)?);
            let same = homotopic(&map, base, &q1, &q2)?;
            if json {
                return Ok(pretty(&json!({ "homotopic": same })));
            }
            Ok(if same { "homotopic\n" } else { "not homotopic\n" }.to_string())
        }
        Command::Cayley { group, radius, dot, json } => {
            let ball = cayley_ball(&parse_group_spec(&group)?, radius)?;
            if dot {
                return Ok(ball.to_dot());
            }
            if json {
                return Ok(pretty(&ball.to_json()));
            }
            Ok(format!(
                "vertices: {}\nedges: {}\ncells: {}\n",
                ball.vertices.len(),
                ball.edges.len(),
                ball.cells.len()
            ))
        }
        Command::Petal { g } => Ok(GraphDocument::from_map(&petal(g))
            .with_name(format!("petal {g}"))
            .to_canonical_string()),
        Command::Random { genus, moves, seed } => {
            Ok(GraphDocument::from_map(&random_filling_map(genus, moves, seed))
                .with_name(format!("random genus {genus} moves {moves} seed {seed}"))
                .to_canonical_string())
        }
        Command::EmitDot { file } => Ok(map_to_dot(&load(&file)?)),
    }
}
