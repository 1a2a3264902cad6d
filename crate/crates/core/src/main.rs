fn main() {
    std::process::exit(rees_hodge::cli::dispatch(std::env::args_os()));
}
