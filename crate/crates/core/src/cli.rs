//! The `dighom` command line.
//!
//! [`run`] parses arguments, performs one command, and returns the exit
//! status with the text for stdout and stderr. Status 0 means success, 1 a
//! failed verification (a map that is not continuous, maps that are not
//! homotopic, a theorem check that fails), and 2 an input or usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::chains::{verify_chain_commutes, verify_dd_zero_in, ChainComplex, DEFAULT_MAX_CHAIN_DIM};
use crate::corpus::{random_images, ring8, square, CorpusRng};
use crate::document::{load_image, load_map, load_path};
use crate::error::{Error, Result};
use crate::homology::{
    homology_in, induced_homology_map_between, max_homology_dim, verify_functoriality, verify_inclusion_mono,
    HomologyBasis,
};
use crate::homotopy::{are_homotopic_with_cap, are_pointed_homotopic_with_cap, loop_equivalence, DEFAULT_STATE_CAP};
use crate::hurewicz::hurewicz_counterexample;
use crate::image::{connected_components, DigitalImage};
use crate::lattice::{neighbor_count, LatticePoint};
use crate::maps::{is_continuous, DigitalMap};
use crate::simplicial::{compose_vertex_maps, face_vertex_map};

/// Environment variable overriding the homotopy search state cap.
pub const STATE_CAP_VAR: &str = "DIGHOM_STATE_CAP";

#[derive(Parser, Debug)]
#[command(name = "dighom", version, about = "Digital topology: continuity, homotopy, and digital homology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sizes and adjacency counts of an image.
    Info { image: PathBuf },
    /// Connected components of an image.
    Components { image: PathBuf },
    /// Homology groups H_0 .. H_N.
    Homology {
        image: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        /// Also print the boundary matrices as triplets.
        #[arg(long)]
        dump_matrices: bool,
    },
    /// Checks that a map is digitally continuous.
    CheckMap { map: PathBuf },
    /// Matrix of the induced map on H_N.
    Induced {
        map: PathBuf,
        #[arg(long)]
        dim: usize,
    },
    /// Decides whether two maps are digitally homotopic.
    Homotopy {
        f: PathBuf,
        g: PathBuf,
        /// Keep a base point fixed throughout.
        #[arg(long, requires = "base")]
        pointed: bool,
        /// Base point as comma-separated coordinates, e.g. `0,0`.
        #[arg(long, requires = "pointed", allow_hyphen_values = true)]
        base: Option<String>,
    },
    /// Bounded check that two loops define the same loop class.
    LoopsEqual {
        f: PathBuf,
        g: PathBuf,
        #[arg(long)]
        bound: usize,
    },
    /// Runs the theorem checks on a corpus of images and maps.
    Verify {
        #[arg(long, value_enum, default_value_t = CorpusKind::Builtin)]
        corpus: CorpusKind,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// The four-point loop example with its three verdicts.
    HurewiczDemo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CorpusKind {
    Builtin,
    Random,
}

/// Exit status and output of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String, passed: bool) -> Self {
        Outcome {
            status: if passed { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        }
    }
}

/// Runs one command line (the first item is the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    status: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    status: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let mut warnings = Vec::new();
    let result = dispatch(cli.command, &mut warnings);
    let mut stderr: String = warnings.iter().map(|w| format!("warning: {w}\n")).collect();
    match result {
        Ok(mut outcome) => {
            stderr.push_str(&outcome.stderr);
            outcome.stderr = stderr;
            outcome
        }
        Err(e) => {
            writeln!(stderr, "error: {e}").unwrap();
            Outcome {
                status: if e == Error::NotContinuous { 1 } else { 2 },
                stdout: String::new(),
                stderr,
            }
        }
    }
}

fn state_cap() -> Result<usize> {
    match std::env::var(STATE_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Io(format!("{STATE_CAP_VAR} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_STATE_CAP),
    }
}

fn image_arg(path: &Path, warnings: &mut Vec<String>) -> Result<(Arc<DigitalImage>, String)> {
    let parsed = load_image(path)?;
    warnings.extend(parsed.warnings);
    let name = parsed.name.unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "image".into())
    });
    Ok((Arc::new(parsed.image), name))
}

fn map_arg(path: &Path, warnings: &mut Vec<String>) -> Result<DigitalMap> {
    let loaded = load_map(path)?;
    warnings.extend(loaded.warnings);
    Ok(loaded.map)
}

fn header(image: &DigitalImage, name: &str) -> String {
    format!("image: {name} ({} points, {})\n", image.len(), image.adjacency())
}

fn list(points: &[LatticePoint]) -> String {
    let parts: Vec<String> = points.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn table(map: &DigitalMap) -> String {
    let values: Vec<LatticePoint> = map.table().iter().map(|&j| map.codomain().point(j).clone()).collect();
    list(&values)
}

fn dispatch(command: Command, warnings: &mut Vec<String>) -> Result<Outcome> {
    match command {
        Command::Info { image } => {
            let (x, name) = image_arg(&image, warnings)?;
            let mut out = header(&x, &name);
            writeln!(out, "ambient dimension: {}", x.dim()).unwrap();
            if let Some(spec) = x.spec() {
                writeln!(out, "lattice neighbours per point: {}", neighbor_count(spec)).unwrap();
            }
            writeln!(out, "edges: {}", x.edge_count()).unwrap();
            let degrees: Vec<usize> = (0..x.len()).map(|i| x.neighbor_indices(i).len()).collect();
            if let (Some(lo), Some(hi)) = (degrees.iter().min(), degrees.iter().max()) {
                writeln!(out, "degree: min {lo}, max {hi}").unwrap();
            }
            writeln!(out, "components: {}", connected_components(&x).len()).unwrap();
            Ok(Outcome::ok(out, true))
        }
        Command::Components { image } => {
            let (x, name) = image_arg(&image, warnings)?;
            let blocks = connected_components(&x);
            let mut out = header(&x, &name);
            writeln!(out, "components: {}", blocks.len()).unwrap();
            for block in &blocks {
                writeln!(out, "{}", list(block)).unwrap();
            }
            Ok(Outcome::ok(out, true))
        }
        Command::Homology {
            image,
            max_dim,
            dump_matrices,
        } => {
            let top = max_homology_dim(DEFAULT_MAX_CHAIN_DIM);
            if max_dim > top {
                return Err(Error::DimensionTooLarge {
                    requested: max_dim,
                    max: top,
                });
            }
            let (x, name) = image_arg(&image, warnings)?;
            let complex = ChainComplex::with_max_dim(x.clone(), max_dim + 1);
            let mut out = header(&x, &name);
            for n in 0..=max_dim {
                writeln!(out, "H_{n} = {}", homology_in(&complex, n)?).unwrap();
            }
            if dump_matrices {
                for n in 0..=max_dim + 1 {
                    out.push_str(&complex.boundary(n)?.to_triplets(&format!("d_{n}")));
                }
            }
            Ok(Outcome::ok(out, true))
        }
        Command::CheckMap { map } => {
            let f = map_arg(&map, warnings)?;
            let ok = is_continuous(&f);
            let mut out = format!("domain: {} points, {}\n", f.domain().len(), f.domain().adjacency());
            writeln!(out, "codomain: {} points, {}", f.codomain().len(), f.codomain().adjacency()).unwrap();
            writeln!(out, "continuous: {ok}").unwrap();
            if !ok {
                for (i, j) in f.domain().edges() {
                    if !f.codomain().equal_or_adjacent(f.at(i), f.at(j)) {
                        writeln!(
                            out,
                            "broken edge: {} {} -> {} {}",
                            f.domain().point(i),
                            f.domain().point(j),
                            f.codomain().point(f.at(i)),
                            f.codomain().point(f.at(j))
                        )
                        .unwrap();
                        break;
                    }
                }
            }
            Ok(Outcome::ok(out, ok))
        }
        Command::Induced { map, dim } => {
            let top = max_homology_dim(DEFAULT_MAX_CHAIN_DIM);
            if dim > top {
                return Err(Error::DimensionTooLarge { requested: dim, max: top });
            }
            let f = map_arg(&map, warnings)?;
            if !is_continuous(&f) {
                return Err(Error::NotContinuous);
            }
            let bx = HomologyBasis::new(&ChainComplex::with_max_dim(f.domain().clone(), dim + 1), dim)?;
            let by = HomologyBasis::new(&ChainComplex::with_max_dim(f.codomain().clone(), dim + 1), dim)?;
            let m = induced_homology_map_between(&f, &bx, &by)?;
            let mut out = format!("H_{dim}(X) = {}\nH_{dim}(Y) = {}\n", bx.group(), by.group());
            writeln!(out, "f_* ({} x {}):", m.rows(), m.cols()).unwrap();
            for row in m.to_dense() {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                writeln!(out, "  [{}]", cells.join(" ")).unwrap();
            }
            Ok(Outcome::ok(out, true))
        }
        Command::Homotopy { f, g, pointed, base } => {
            let f = map_arg(&f, warnings)?;
            let g = map_arg(&g, warnings)?;
            let cap = state_cap()?;
            let witness = if pointed {
                let text = base.expect("clap enforces --base with --pointed");
                let coords = text
                    .split(',')
                    .map(|c| c.trim().parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::Io(format!("cannot parse base point {text:?}")))?;
                let x0 = LatticePoint::new(coords)?;
                let i = f.domain().require(&x0)?;
                let y0 = f.codomain().point(f.at(i)).clone();
                are_pointed_homotopic_with_cap(&f, &g, &x0, &y0, cap)?
            } else {
                are_homotopic_with_cap(&f, &g, cap)?
            };
            let mut out = String::new();
            match &witness {
                Some(h) => {
                    writeln!(out, "homotopic: true").unwrap();
                    writeln!(out, "m = {}", h.len()).unwrap();
                    writeln!(out, "domain order: {}", list(f.domain().points())).unwrap();
                    for (t, frame) in h.frames().iter().enumerate() {
                        writeln!(out, "F_{t} = {}", table(frame)).unwrap();
                    }
                }
                None => writeln!(out, "homotopic: false").unwrap(),
            }
            Ok(Outcome::ok(out, witness.is_some()))
        }
        Command::LoopsEqual { f, g, bound } => {
            let (f, wf) = load_path(&f)?;
            let (g, wg) = load_path(&g)?;
            warnings.extend(wf);
            warnings.extend(wg);
            let found = loop_equivalence(&f, &g, bound, state_cap()?)?;
            let mut out = String::new();
            match &found {
                Some(w) => {
                    writeln!(out, "equivalent: true (bound {bound})").unwrap();
                    writeln!(out, "f' = {}", list(&w.first_extension.points())).unwrap();
                    writeln!(out, "g' = {}", list(&w.second_extension.points())).unwrap();
                    writeln!(out, "homotopy length: {}", w.homotopy.len()).unwrap();
                }
                None => writeln!(out, "equivalent: false within bound {bound}").unwrap(),
            }
            Ok(Outcome::ok(out, found.is_some()))
        }
        Command::Verify { corpus, seed } => verify(corpus, seed),
        Command::HurewiczDemo => {
            let report = hurewicz_counterexample()?;
            Ok(Outcome::ok(report.to_string(), report.all_hold()))
        }
    }
}

struct Tally {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn verify(kind: CorpusKind, seed: u64) -> Result<Outcome> {
    let mut images: Vec<(String, Arc<DigitalImage>)> = vec![
        ("square4-u1".into(), Arc::new(square(1)?)),
        ("square4-u2".into(), Arc::new(square(2)?)),
        ("ring8".into(), Arc::new(ring8()?)),
    ];
    if kind == CorpusKind::Random {
        for (k, x) in random_images(seed, 12, 8, 3).into_iter().enumerate() {
            images.push((format!("random-{k}"), x));
        }
    }
    let mut rng = CorpusRng::new(seed ^ 0x5eed);

    let mut dd = Tally::new("boundary of boundary is zero");
    let mut faces = Tally::new("face identity");
    let mut commutes = Tally::new("chain maps commute with boundary");
    let mut functor = Tally::new("functoriality");
    let mut axiom = Tally::new("dimension axiom");
    let mut mono = Tally::new("inclusion is injective on chains");

    for n in 1..=4 {
        let next = n + 1;
        for j in 1..=next {
            for k in 0..j {
                let left = compose_vertex_maps(&face_vertex_map(j, next)?, &face_vertex_map(k, n)?);
                let right = compose_vertex_maps(&face_vertex_map(k, next)?, &face_vertex_map(j - 1, n)?);
                faces.record(left == right, || format!("n = {n}, j = {j}, k = {k}"));
            }
        }
    }
    for (name, x) in &images {
        let complex = ChainComplex::with_max_dim(x.clone(), 3);
        for n in 1..=2 {
            dd.record(verify_dd_zero_in(&complex, n)?, || format!("{name}, n = {n}"));
        }
        let sub = Arc::new(x.subimage(rng.subset(x))?);
        for n in 0..=2 {
            mono.record(verify_inclusion_mono(&sub, x, n)?, || format!("{name}, n = {n}"));
        }
    }
    for pair in images.windows(2) {
        let ((nx, x), (ny, y)) = (&pair[0], &pair[1]);
        let f = rng.continuous_map(x, y).expect("codomain is nonempty");
        let g = rng.continuous_map(y, x).expect("codomain is nonempty");
        for n in 1..=2 {
            commutes.record(verify_chain_commutes(&f, n)?, || format!("{nx} -> {ny}, n = {n}"));
        }
        for n in 0..=1 {
            functor.record(verify_functoriality(&f, &g, n)?, || format!("{nx} -> {ny} -> {nx}, n = {n}"));
        }
    }
    let point = rng.image(1, 3);
    let complex = ChainComplex::with_max_dim(Arc::new(point.clone()), DEFAULT_MAX_CHAIN_DIM);
    for n in 0..=max_homology_dim(DEFAULT_MAX_CHAIN_DIM) {
        let h = homology_in(&complex, n)?;
        let expected_betti = usize::from(n == 0);
        axiom.record(h.betti == expected_betti && h.torsion.is_empty(), || {
            format!("{} in Z^{}: H_{n} = {h}", point.point(0), point.dim())
        });
    }

    let mut out = format!(
        "corpus: {} ({} images, seed {seed})\n",
        match kind {
            CorpusKind::Builtin => "builtin",
            CorpusKind::Random => "random",
        },
        images.len()
    );
    let tallies = [dd, faces, commutes, functor, axiom, mono];
    let mut all = true;
    for t in &tallies {
        let verdict = if t.failures.is_empty() { "pass" } else { "FAIL" };
        all &= t.failures.is_empty();
        writeln!(out, "{verdict}: {} ({} cases)", t.name, t.cases).unwrap();
        for f in &t.failures {
            writeln!(out, "  failed: {f}").unwrap();
        }
    }
    writeln!(out, "{}", if all { "all checks passed" } else { "some checks failed" }).unwrap();
    Ok(Outcome::ok(out, all))
}
