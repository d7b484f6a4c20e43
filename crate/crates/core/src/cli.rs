//! The `verocohom` command line.
//!
//! Spec files are JSON documents:
//!
//! ```json
//! {"n": 2, "d": 3, "T_monomials": [[1, 1, 1]]}
//! ```
//!
//! with exactly one of `T_monomials` (exponent vectors), `T_polynomials`
//! (generators of `T`) or `map_polynomials` (the forms defining `f`). A
//! polynomial is a list of terms `[numerator, denominator, [e_0, ..., e_n]]`.
//!
//! Exit codes: 0 success, 1 failed check, 2 usage or parse error,
//! 3 inconsistent spec, 4 size budget exceeded, 5 degenerate map.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::branch::{report, BranchReport};
use crate::cohomology::{table_with, BasePoints, CohomRow, MapSpec, Sheaf};
use crate::error::Error;
use crate::exactla::{QMatrix, Rational, Subspace};
use crate::operators::{
    delta, index_pairs, ker_d, ker_dd, pieri_summand, polarization_image, polarize_in, psi_image, theta, xi,
    TensorSpace,
};
use crate::surface::{smoothness_necessary, TriangleT};
use crate::symspace::{basis, sym_dim, MultiIndex, QPoly, Side};

/// One term `[numerator, denominator, exponents]`.
pub type Term = (i64, i64, Vec<u32>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub n: usize,
    pub d: usize,
    #[serde(rename = "T_monomials", default, skip_serializing_if = "Option::is_none")]
    pub t_monomials: Option<Vec<Vec<u32>>>,
    #[serde(rename = "T_polynomials", default, skip_serializing_if = "Option::is_none")]
    pub t_polynomials: Option<Vec<Vec<Term>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map_polynomials: Option<Vec<Vec<Term>>>,
    /// Free text, echoed by `info`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Spec(String),
    Budget(String),
    Degenerate(String),
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Spec(_) => 3,
            CliError::Budget(_) => 4,
            CliError::Degenerate(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m)
            | CliError::Spec(m)
            | CliError::Budget(m)
            | CliError::Degenerate(m)
            | CliError::Failed(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidSpec(_) | Error::DegreeMismatch(_) | Error::DimensionMismatch(_) => {
                CliError::Spec(e.to_string())
            }
            Error::Degenerate(_) => CliError::Degenerate(e.to_string()),
            Error::NotApplicable(_) | Error::IndexOutOfRange(_) => CliError::Usage(e.to_string()),
            Error::Inconsistency(_) => CliError::Failed(e.to_string()),
        }
    }
}

fn parse_poly(nvars: usize, terms: &[Term]) -> Result<QPoly, CliError> {
    let mut p = QPoly::zero(nvars, Side::Primal);
    for (num, den, exps) in terms {
        if *den == 0 {
            return Err(CliError::Usage("zero denominator in a coefficient".into()));
        }
        if exps.len() != nvars {
            return Err(CliError::Spec(format!("exponent vector {exps:?} needs {nvars} entries")));
        }
        p.add_term(MultiIndex::new(exps.clone()), Rational::new(BigInt::from(*num), BigInt::from(*den)));
    }
    Ok(p)
}

impl SpecFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("malformed spec file: {e}")))
    }

    pub fn to_map_spec(&self) -> Result<MapSpec, CliError> {
        let given = [self.t_monomials.is_some(), self.t_polynomials.is_some(), self.map_polynomials.is_some()];
        if given.iter().filter(|&&g| g).count() != 1 {
            return Err(CliError::Usage("give exactly one of T_monomials, T_polynomials, map_polynomials".into()));
        }
        let nvars = self.n + 1;
        let spec = if let Some(m) = &self.t_monomials {
            MapSpec::from_monomials(self.n, self.d, m)
        } else if let Some(ps) = &self.t_polynomials {
            let polys = ps.iter().map(|t| parse_poly(nvars, t)).collect::<Result<Vec<_>, _>>()?;
            check_degrees(&polys, self.d)?;
            MapSpec::from_t_polys(self.n, self.d, &polys)
        } else {
            let ps = self.map_polynomials.as_ref().expect("one field is present");
            let polys = ps.iter().map(|t| parse_poly(nvars, t)).collect::<Result<Vec<_>, _>>()?;
            check_degrees(&polys, self.d)?;
            MapSpec::from_forms(self.n, self.d, &polys)
        };
        Ok(spec?)
    }
}

fn check_degrees(polys: &[QPoly], d: usize) -> Result<(), CliError> {
    if polys.is_empty() {
        return Err(CliError::Spec("at least one polynomial is required".into()));
    }
    for p in polys {
        if p.homogeneous_degree() != Some(d as u32) {
            return Err(CliError::Spec(format!("{p} is not a nonzero form of degree {d}")));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SheafArg {
    Normal,
    Tangent,
}

#[derive(Parser, Debug)]
#[command(name = "verocohom", version, about = "Exact cohomology of projected Veronese maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug)]
pub struct TableArgs {
    /// JSON spec file
    pub file: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    pub kmin: Option<i64>,
    /// Defaults to 2d + n + 1
    #[arg(long, allow_negative_numbers = true)]
    pub kmax: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Skip the second computation of h^{n-1}
    #[arg(long)]
    pub no_cross_check: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Table of h^i(N_f(-k)) or h^i(T_f(-k))
    Cohom {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long, value_enum, default_value_t = SheafArg::Normal)]
        sheaf: SheafArg,
    },
    /// Same as `cohom --sheaf tangent`
    Tangent {
        #[command(flatten)]
        table: TableArgs,
    },
    /// Check the decomposition of S^k U ⊗ S^d U and the operator identities
    Repcheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        /// Largest allowed dim(S^k U ⊗ S^d U)
        #[arg(long, default_value_t = 2000)]
        budget: usize,
    },
    /// Branch locus invariants of a map P^2 -> P^3
    Branch {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Basic data of a spec
    Info {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct TableOutput {
    pub spec: SpecFile,
    pub rows: Vec<CohomRow>,
}

/// Runs the command line on `args` (including the program name) and
/// returns the exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command) -> Result<(String, i32), CliError> {
    match cmd {
        Command::Cohom { table, sheaf } => {
            let sheaf = match sheaf {
                SheafArg::Normal => Sheaf::Normal,
                SheafArg::Tangent => Sheaf::Tangent,
            };
            cmd_cohom(&table, sheaf).map(|s| (s, 0))
        }
        Command::Tangent { table } => cmd_cohom(&table, Sheaf::Tangent).map(|s| (s, 0)),
        Command::Repcheck { n, d, k, budget } => cmd_repcheck(n, d, k, budget),
        Command::Branch { file, format } => cmd_branch(&file, format).map(|s| (s, 0)),
        Command::Info { file, format } => cmd_info(&file, format).map(|s| (s, 0)),
    }
}

fn cmd_cohom(args: &TableArgs, sheaf: Sheaf) -> Result<String, CliError> {
    let file = SpecFile::load(&args.file)?;
    let kmin = args.kmin.unwrap_or(0);
    let kmax = args.kmax.unwrap_or(2 * file.d as i64 + file.n as i64 + 1);
    if kmin > kmax {
        return Err(CliError::Usage(format!("--kmin {kmin} is larger than --kmax {kmax}")));
    }
    let spec = file.to_map_spec()?;
    let t = table_with(&spec, sheaf, kmin, kmax, !args.no_cross_check)?;
    Ok(match args.format {
        Format::Json => render_json(file, t.rows),
        Format::Csv => render_csv(spec.n(), &t.rows),
        Format::Table => render_table(spec.n(), sheaf, &t.rows),
    })
}

pub fn render_json(spec: SpecFile, rows: Vec<CohomRow>) -> String {
    let mut s = serde_json::to_string_pretty(&TableOutput { spec, rows }).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn render_csv(n: usize, rows: &[CohomRow]) -> String {
    let mut s = String::from("k");
    for i in 0..=n {
        let _ = write!(s, ",h{i}");
    }
    s.push_str(",chi\n");
    for r in rows {
        let _ = write!(s, "{}", r.k);
        for h in &r.h {
            let _ = write!(s, ",{h}");
        }
        let _ = writeln!(s, ",{}", r.chi);
    }
    s
}

fn render_table(n: usize, sheaf: Sheaf, rows: &[CohomRow]) -> String {
    let name = match sheaf {
        Sheaf::Normal => "N_f(-k)",
        Sheaf::Tangent => "T_f(-k)",
    };
    let mut header = vec!["k".to_string()];
    header.extend((0..=n).map(|i| format!("h{i}")));
    header.push("chi".into());
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![r.k.to_string()];
            v.extend(r.h.iter().map(|h| h.to_string()));
            v.push(r.chi.to_string());
            v
        })
        .collect();
    let widths: Vec<usize> =
        (0..header.len()).map(|c| body.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap()).collect();
    let line =
        |cells: &[String]| cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ");
    let mut s = format!("h^i({name})\n{}  routes\n", line(&header));
    for (r, cells) in rows.iter().zip(&body) {
        let routes: Vec<String> =
            r.routes.iter().map(|rs| rs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("+")).collect();
        let _ = writeln!(s, "{}  {}", line(cells), routes.join(" "));
    }
    s
}

/// One verdict of `repcheck`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

/// Direct-sum decomposition, kernel characterizations and operator
/// identities on `S^k U ⊗ S^d U`. The identities are linear in their
/// input, so they are checked on every basis element.
pub fn repcheck(n: usize, d: usize, k: usize) -> Result<Vec<Check>, Error> {
    let space = TensorSpace::new(n, k, d);
    let total = space.dim();
    let mut checks = Vec::new();

    let summands: Vec<Subspace> = (0..=k).map(|t| pieri_summand(t, k, d, n)).collect::<Result<_, _>>()?;
    let dims: Vec<usize> = summands.iter().map(Subspace::dim).collect();
    let mut stacked = QMatrix::zeros(0, total);
    for s in &summands {
        stacked = stacked.vstack(s.basis())?;
    }
    let sum: usize = dims.iter().sum();
    let independent = stacked.rank() == sum;
    let parts: Vec<String> = dims.iter().map(usize::to_string).collect();
    checks.push(Check {
        name: "pieri".into(),
        ok: sum == total && independent,
        detail: format!(
            "{total} = {}, {}",
            parts.join(" + "),
            if sum == total && independent { "direct sum OK" } else { "NOT a direct sum" }
        ),
    });

    let kd = ker_d(k, d, n)?;
    let pk = polarization_image(n, k, d)?;
    checks.push(Check {
        name: "ker D = p_k image".into(),
        ok: kd == pk && kd == summands[0] && kd.dim() == sym_dim(n, (d + k) as i64),
        detail: format!("dim {}", kd.dim()),
    });

    let kdd = ker_dd(k, d, n)?;
    let psi = psi_image(n, k, d + k - 1)?;
    checks.push(Check { name: "ker DD = Im psi".into(), ok: kdd == psi, detail: format!("dim {}", kdd.dim()) });

    let mut polar_ok = true;
    let mut count = 0;
    for m in basis(n, d + k).iter() {
        let q = QPoly::monomial(Side::Primal, m.clone(), Rational::from_integer(1.into()));
        let p = polarize_in(&q, k, d + k)?;
        let p1 = polarize_in(&q, k + 1, d + k)?;
        let dd = Rational::from_integer(d.into());
        let kk = Rational::from_integer((k + 1).into());
        polar_ok &= theta(&p)? == p1.scale(&dd);
        polar_ok &= delta(&p1)? == p.scale(&kk);
        polar_ok &= delta(&theta(&p)?)? == p.scale(&(&dd * &kk));
        count += 1;
    }
    checks.push(Check { name: "polarization identities".into(), ok: polar_ok, detail: format!("{count} basis forms") });

    let mut commute_ok = true;
    for c in 0..total {
        let e = space.basis_elem(c);
        for (i, j) in index_pairs(n) {
            let x = xi(i, j, &e)?;
            commute_ok &= delta(&x)? == xi(i, j, &delta(&e)?)?;
            commute_ok &= theta(&x)? == xi(i, j, &theta(&e)?)?;
        }
    }
    checks.push(Check {
        name: "xi commutes with delta, theta".into(),
        ok: commute_ok,
        detail: format!("{total} basis tensors"),
    });
    Ok(checks)
}

fn cmd_repcheck(n: usize, d: usize, k: usize, budget: usize) -> Result<(String, i32), CliError> {
    if n == 0 || k == 0 || k > d {
        return Err(CliError::Usage(format!("repcheck needs n >= 1 and 1 <= k <= d, got n={n}, k={k}, d={d}")));
    }
    let size = sym_dim(n, k as i64) * sym_dim(n, d as i64);
    if size > budget {
        return Err(CliError::Budget(format!("dim S^{k} U ⊗ S^{d} U = {size} exceeds the budget {budget}")));
    }
    let checks = repcheck(n, d, k)?;
    let mut s = format!("n={n} k={k} d={d}\n");
    for c in &checks {
        let _ = writeln!(s, "{:<32} {}  {}", c.name, if c.ok { "pass" } else { "FAIL" }, c.detail);
    }
    let code = if checks.iter().all(|c| c.ok) { 0 } else { 1 };
    Ok((s, code))
}

fn cmd_branch(path: &Path, format: Format) -> Result<String, CliError> {
    let file = SpecFile::load(path)?;
    if file.n != 2 {
        return Err(CliError::Usage(format!("branch needs n = 2, got n = {}", file.n)));
    }
    let spec = file.to_map_spec()?;
    if spec.s() != 3 {
        return Err(CliError::Usage(format!("branch needs a map to P^3, this one goes to P^{}", spec.s())));
    }
    let r = report(&spec)?;
    Ok(render_branch(&file, &r, format))
}

fn render_branch(file: &SpecFile, r: &BranchReport, format: Format) -> String {
    let minors: Vec<String> = r.minors.iter().map(QPoly::to_string).collect();
    let fields: Vec<(&str, String)> = vec![
        ("h_N_gcd", r.h_n_gcd.to_string()),
        ("h_N_tail", r.h_n_tail.to_string()),
        ("agree", (r.h_n_gcd == r.h_n_tail).to_string()),
        ("k0", r.k0.to_string()),
        ("q", r.q.to_string()),
        ("h1_N_minus_q", r.h1_at_q.to_string()),
        ("degZprime_upper", r.degzprime_upper.to_string()),
        ("gcd", r.gcd_poly.to_string()),
    ];
    match format {
        Format::Json => {
            let v = serde_json::json!({
                "spec": file,
                "report": {
                    "h_N_gcd": r.h_n_gcd,
                    "h_N_tail": r.h_n_tail,
                    "agree": r.h_n_gcd == r.h_n_tail,
                    "k0": r.k0,
                    "q": r.q,
                    "h1_N_minus_q": r.h1_at_q,
                    "degZprime_upper": r.degzprime_upper,
                    "minors": minors,
                    "gcd": r.gcd_poly.to_string(),
                }
            });
            serde_json::to_string_pretty(&v).expect("plain data serializes") + "\n"
        }
        Format::Csv => {
            let mut s = String::from("field,value\n");
            for (k, v) in fields {
                let _ = writeln!(s, "{k},{v}");
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "h_N (gcd of minors)      {}", r.h_n_gcd);
            let _ = writeln!(s, "h_N (h^2 tail, k0 = {:>2})  {}", r.k0, r.h_n_tail);
            let _ = writeln!(s, "methods agree            {}", if r.h_n_gcd == r.h_n_tail { "yes" } else { "NO" });
            let _ = writeln!(s, "q = 4d - 3 - h_N         {}", r.q);
            let _ = writeln!(s, "h^1(N_f(-q))             {}", r.h1_at_q);
            let _ = writeln!(s, "deg Z' <=                {}", r.degzprime_upper);
            let _ = writeln!(s, "gcd of minors            {}", r.gcd_poly);
            for (i, m) in minors.iter().enumerate() {
                let _ = writeln!(s, "minor {i}                  {m}");
            }
            s
        }
    }
}

fn cmd_info(path: &Path, format: Format) -> Result<String, CliError> {
    let file = SpecFile::load(path)?;
    let spec = file.to_map_spec()?;
    let base = match spec.base_points() {
        BasePoints::Free => "free".to_string(),
        BasePoints::Found(s) => format!("FOUND on coordinate support {s:?}"),
        BasePoints::NotVerified => "not verified (T is not monomial)".to_string(),
    };
    let smooth = TriangleT::from_spec(&spec).map(|t| smoothness_necessary(&t));
    let smooth_text = match &smooth {
        None => "n/a".to_string(),
        Some(v) if v.is_empty() => "pass".to_string(),
        Some(v) => format!("FAIL {}", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")),
    };
    Ok(match format {
        Format::Json => {
            let v = serde_json::json!({
                "spec": file,
                "n": spec.n(),
                "d": spec.d(),
                "N": spec.big_n(),
                "s": spec.s(),
                "dim_T": spec.t().dim(),
                "base_points": spec.base_points(),
                "smoothness_necessary": smooth.map(|v| v.iter().map(|t| t.coords().to_vec()).collect::<Vec<_>>()),
            });
            serde_json::to_string_pretty(&v).expect("plain data serializes") + "\n"
        }
        Format::Csv => format!(
            "n,d,N,s,dim_T,base_points,smoothness_necessary\n{},{},{},{},{},{},{}\n",
            spec.n(),
            spec.d(),
            spec.big_n(),
            spec.s(),
            spec.t().dim(),
            base,
            smooth_text
        ),
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "n = {}", spec.n());
            let _ = writeln!(s, "d = {}", spec.d());
            let _ = writeln!(s, "N = {}", spec.big_n());
            let _ = writeln!(s, "s = {}", spec.s());
            let _ = writeln!(s, "dim T = {}", spec.t().dim());
            let _ = writeln!(s, "base points: {base}");
            let _ = writeln!(s, "smoothness-necessary: {smooth_text}");
            if let Some(note) = &file.note {
                let _ = writeln!(s, "note: {note}");
            }
            s
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_file_round_trip() {
        let text =
            r#"{"n":2,"d":2,"map_polynomials":[[[1,1,[2,0,0]]],[[1,1,[0,2,0]]],[[1,1,[0,0,2]]],[[2,1,[1,1,0]]]]}"#;
        let f = SpecFile::parse(text).unwrap();
        assert_eq!(serde_json::to_string(&f).unwrap(), text);
        let spec = f.to_map_spec().unwrap();
        assert_eq!(spec.s(), 3);
    }

    #[test]
    fn spec_file_errors() {
        assert_eq!(SpecFile::parse("{").unwrap_err().exit_code(), 2);
        let both = SpecFile::parse(r#"{"n":2,"d":3,"T_monomials":[[1,1,1]],"T_polynomials":[]}"#).unwrap();
        assert_eq!(both.to_map_spec().unwrap_err().exit_code(), 2);
        let bad = SpecFile::parse(r#"{"n":2,"d":3,"T_monomials":[[1,1,2]]}"#).unwrap();
        assert_eq!(bad.to_map_spec().unwrap_err().exit_code(), 3);
        let dep = SpecFile::parse(r#"{"n":1,"d":2,"map_polynomials":[[[1,1,[2,0]]],[[2,1,[2,0]]]]}"#).unwrap();
        assert_eq!(dep.to_map_spec().unwrap_err().exit_code(), 3);
        let zero_den = SpecFile::parse(r#"{"n":1,"d":2,"T_polynomials":[[[1,0,[2,0]]]]}"#).unwrap();
        assert_eq!(zero_den.to_map_spec().unwrap_err().exit_code(), 2);
    }

    #[test]
    fn repcheck_small() {
        let checks = repcheck(1, 1, 1).unwrap();
        assert_eq!(checks[0].detail, "4 = 3 + 1, direct sum OK");
        assert!(checks.iter().all(|c| c.ok));
        assert!(repcheck(2, 2, 2).unwrap().iter().all(|c| c.ok));
    }

    #[test]
    fn usage_errors() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        assert_eq!(run_cli(["verocohom", "repcheck", "--n", "2", "--d", "2", "--k", "3"], &mut out, &mut err), 2);
        assert_eq!(run_cli(["verocohom", "repcheck", "--n", "3", "--d", "9", "--k", "9"], &mut out, &mut err), 4);
        assert_eq!(run_cli(["verocohom", "bogus"], &mut out, &mut err), 2);
        assert_eq!(run_cli(["verocohom", "--help"], &mut out, &mut err), 0);
    }
}
