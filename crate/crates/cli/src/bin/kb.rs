fn main() {
    corner_calculus_cli::finish(corner_calculus_cli::kb(std::env::args_os()))
}
