//! Reading a JSON spec file and rendering a table in each output format,
//! the way the command line does.

use verocohom::cli::{render_csv, render_json, run_cli, SpecFile};
use verocohom::cohomology::{table, Sheaf};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = r#"{"n": 1, "d": 3, "T_polynomials": [[[1, 1, [2, 1]], [-1, 2, [1, 2]]]]}"#;
    let file = SpecFile::parse(text).map_err(|e| format!("{e:?}"))?;
    let spec = file.to_map_spec().map_err(|e| format!("{e:?}"))?;

    let t = table(&spec, Sheaf::Normal, 0, 6)?;
    print!("{}", render_csv(spec.n(), &t.rows));
    print!("{}", render_json(file, t.rows));

    // The binary is a thin wrapper around run_cli.
    let code = run_cli(
        ["verocohom", "repcheck", "--n", "1", "--d", "2", "--k", "2"],
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    );
    println!("exit code {code}");
    Ok(())
}
