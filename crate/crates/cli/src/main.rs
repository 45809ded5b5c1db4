use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let r = pcpk_cli::run(std::env::args_os());
    if let (Some(p), None) = (&r.payload, &r.written_to) {
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(p.as_bytes());
        let _ = out.flush();
    }
    if !r.summary.is_empty() && r.summary != "help" {
        eprintln!("{}", r.summary);
    }
    ExitCode::from(r.code as u8)
}
