#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lagcorr/dsl.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Run a lagcorr script and print its report"};

    std::string script_path;
    std::string format = "text";
    std::uint64_t seed = 0;
    std::int64_t modulus = 2;
    app.add_option("--script", script_path, "Script file (default: stdin)");
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "machine"}));
    app.add_option("--seed", seed, "Seed for check-axioms random");
    app.add_option("--modulus", modulus, "Grading modulus N (even, >= 2)");
    CLI11_PARSE(app, argc, argv);

    std::string text;
    if (script_path.empty()) {
        text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
        std::ifstream in(script_path, std::ios::binary);
        if (!in) {
            std::cerr << "lagcorr: cannot read " << script_path << "\n";
            return 2;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }

    lagcorr::Report report;
    try {
        report = lagcorr::run_script(text, lagcorr::RunOptions{seed, modulus});
    } catch (const lagcorr::Error& e) {
        std::cerr << "lagcorr: " << e.what() << "\n";
        return 2;
    }
    std::cout << (format == "machine" ? lagcorr::render_machine(report) : lagcorr::render_text(report));
    return report.exit_code();
}
