use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let env = std::env::var("ENGINE_MAX_NIL").ok();
    let out = twistdef_cli::run_cli(&args, env.as_deref());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
