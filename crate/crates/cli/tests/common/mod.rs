#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub struct Golden {
    pub file: &'static str,
    pub args: &'static [&'static str],
    pub code: i32,
}

const COULOMB: &[&str] = &[
    "spectrum", "--alpha", "0.2", "--beta", "0", "--gamma", "0", "--mass", "1", "--Nmax", "1", "--nmax", "0", "--mmax",
    "1", "--format", "csv",
];

pub const GOLDENS: &[Golden] = &[
    Golden { file: "spectrum_coulomb.csv", args: COULOMB, code: 0 },
    Golden {
        file: "spectrum_no_bound_state.csv",
        args: &[
            "spectrum", "--alpha", "0", "--beta", "0", "--gamma", "0", "--mass", "1", "--Nmax", "1", "--nmax", "0",
            "--mmax", "1", "--format", "csv",
        ],
        code: 2,
    },
    Golden {
        file: "spectrum_complex_u.csv",
        args: &[
            "spectrum", "--alpha", "0.2", "--beta", "0", "--gamma", "5", "--mass", "1", "--Nmax", "1", "--nmax", "0",
            "--mmax", "0", "--format", "csv",
        ],
        code: 2,
    },
    Golden {
        file: "spectrum_coulomb.json",
        args: &[
            "spectrum", "--alpha", "0.2", "--beta", "0", "--gamma", "0", "--mass", "1", "--Nmax", "1", "--nmax", "0",
            "--mmax", "1",
        ],
        code: 0,
    },
];

pub fn golden_text(file: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(file);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub struct Run {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs the built `kgnu` binary.
pub fn kgnu(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_kgnu"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("kgnu runs");
    Run {
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
        code: out.status.code().expect("exit code"),
    }
}
