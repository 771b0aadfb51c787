fn main() {
    std::process::exit(wishart_asymptotics::cli::run(std::env::args_os()));
}
