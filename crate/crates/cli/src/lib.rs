//! CLI plumbing for gulf-core: argument handling lives in `cli`, file
//! formats in `formats`.

pub mod formats;

pub fn run() -> i32 {
    eprintln!("gulf: not yet wired up");
    3
}
