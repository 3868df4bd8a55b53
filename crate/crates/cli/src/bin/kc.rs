fn main() {
    corner_calculus_cli::finish(corner_calculus_cli::kc(std::env::args_os()))
}
