// Command-line front end: classify, invariants, product, shift, render, verify.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <unistd.h>

#include <CLI11.hpp>

#include "iotacx/io.hpp"
#include "iotacx/oracle.hpp"
#include "iotacx/svg.hpp"
#include "iotacx/verify.hpp"

namespace {

using namespace iotacx;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitSyntax = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct InputSpec {
    std::string inline_;
    std::string file;

    std::string text() const {
        if (!file.empty()) return slurp(file);
        return inline_;
    }
    bool present() const { return !inline_.empty() || !file.empty(); }
};

ParsedComplex readInput(const InputSpec& in) { return parseComplexText(in.text()); }

bool useColor() { return isatty(fileno(stdout)) && std::getenv("NO_COLOR") == nullptr; }

void printReport(const VerifyReport& rep) {
    const bool color = useColor();
    const char* green = color ? "\033[32m" : "";
    const char* red = color ? "\033[31m" : "";
    const char* reset = color ? "\033[0m" : "";
    std::printf("verify: seed=%llu trials=%d\n", static_cast<unsigned long long>(rep.seed), rep.trials);
    for (const auto& p : rep.properties) {
        bool ok = p.fail == 0;
        std::printf("  %s%-24s%s pass=%d fail=%d", ok ? green : red, p.name.c_str(), reset, p.pass,
                    p.fail);
        if (!p.firstCounterexample.empty())
            std::printf("  first counterexample: %s", p.firstCounterexample.c_str());
        std::printf("\n");
    }
    std::printf("%s\n", rep.allPass() ? "all properties hold" : "FAILURES DETECTED");
}

json reportJson(const VerifyReport& rep) {
    json props = json::array();
    for (const auto& p : rep.properties) {
        json e{{"name", p.name}, {"pass", p.pass}, {"fail", p.fail}};
        if (!p.firstCounterexample.empty()) e["counterexample"] = p.firstCounterexample;
        props.push_back(std::move(e));
    }
    return json{{"seed", rep.seed}, {"trials", rep.trials}, {"properties", props}};
}

int run(int argc, char** argv) {
    CLI::App app{"almost iota-complex classifier via immersed curves on the twice-punctured disk"};
    app.require_subcommand(1);
    std::string format = "params";

    InputSpec classifyIn, invariantsIn, shiftIn, renderIn;
    InputSpec prodA, prodB;
    bool productClassify = false;
    int shiftCount = 1;
    std::string renderOut;
    uint64_t seed = 0;
    int trials = 100;
    std::string jsonOut;

    auto addInput = [](CLI::App* cmd, InputSpec& spec, const std::string& name) {
        cmd->add_option(name, spec.inline_, "inline input (standard params or JSON complex)");
        cmd->add_option("--file", spec.file, "read the input from a file");
    };

    CLI::App* cClassify = app.add_subcommand("classify", "standard-complex representative of a complex");
    addInput(cClassify, classifyIn, "input");
    cClassify->add_option("--format", format, "params|json");

    std::string invFormat = "json";
    CLI::App* cInv = app.add_subcommand("invariants", "P, P_omega and phi of a complex");
    addInput(cInv, invariantsIn, "input");
    cInv->add_option("--format", invFormat, "params|json");

    CLI::App* cProd = app.add_subcommand("product", "tensor product of two complexes");
    cProd->add_option("A", prodA.inline_, "first factor");
    cProd->add_option("B", prodB.inline_, "second factor");
    cProd->add_option("--file-a", prodA.file, "read the first factor from a file");
    cProd->add_option("--file-b", prodB.file, "read the second factor from a file");
    cProd->add_flag("--classify", productClassify, "classify the product instead of printing it");
    cProd->add_option("--format", format, "params|json");

    CLI::App* cShift = app.add_subcommand("shift", "apply the shift endomorphism sh_n");
    cShift->add_option("-n,--n", shiftCount, "shift index, n >= 1")->required();
    addInput(cShift, shiftIn, "input");
    cShift->add_option("--format", format, "params|json");

    CLI::App* cRender = app.add_subcommand("render", "render the multicurve as SVG");
    addInput(cRender, renderIn, "input");
    cRender->add_option("--out", renderOut, "output file (stdout when omitted)");

    CLI::App* cVerify = app.add_subcommand("verify", "run the seeded property suite");
    cVerify->add_option("--seed", seed, "PRNG seed");
    cVerify->add_option("--trials", trials, "number of random trials");
    cVerify->add_option("--json", jsonOut, "also write the report as JSON to a file");

    CLI11_PARSE(app, argc, argv);

    auto emitParams = [&](const StandardParams& p) {
        if (format == "json")
            std::cout << json{{"params", printParams(p)}}.dump(2) << "\n";
        else
            std::cout << printParams(p) << "\n";
    };

    if (cClassify->parsed()) {
        if (!classifyIn.present()) throw CLI::ValidationError("classify", "missing input");
        ParsedComplex in = readInput(classifyIn);
        emitParams(classify(buildParsed(in)));
        return kExitOk;
    }
    if (cInv->parsed()) {
        if (!invariantsIn.present()) throw CLI::ValidationError("invariants", "missing input");
        ParsedComplex in = readInput(invariantsIn);
        InvariantRecord rec = invariantsOf(classify(buildParsed(in)));
        if (invFormat == "params")
            std::cout << printParams(rec.params) << "\n";
        else
            std::cout << toJson(rec).dump(2) << "\n";
        return kExitOk;
    }
    if (cProd->parsed()) {
        if (!prodA.present() || !prodB.present())
            throw CLI::ValidationError("product", "two inputs required");
        AlmostIotaComplex a = buildParsed(readInput(prodA));
        AlmostIotaComplex b = buildParsed(readInput(prodB));
        AlmostIotaComplex prod = product(a, b);
        if (productClassify)
            emitParams(classify(prod));
        else
            std::cout << toJson(prod).dump(2) << "\n";
        return kExitOk;
    }
    if (cShift->parsed()) {
        if (!shiftIn.present()) throw CLI::ValidationError("shift", "missing input");
        ParsedComplex in = readInput(shiftIn);
        StandardParams base = std::holds_alternative<StandardParams>(in)
                                  ? std::get<StandardParams>(in)
                                  : classify(std::get<AlmostIotaComplex>(in));
        emitParams(shStandard(base, shiftCount));
        return kExitOk;
    }
    if (cRender->parsed()) {
        if (!renderIn.present()) throw CLI::ValidationError("render", "missing input");
        ParsedComplex in = readInput(renderIn);
        Multicurve mc = multicurveOf(buildParsed(in));
        std::string svg = renderSvg(mc);
        if (renderOut.empty()) {
            std::cout << svg;
        } else {
            std::ofstream out(renderOut, std::ios::binary);
            if (!out) throw std::invalid_argument("cannot write file: " + renderOut);
            out << svg;
        }
        return kExitOk;
    }
    if (cVerify->parsed()) {
        VerifyReport rep = verifySuite(seed, trials);
        printReport(rep);
        if (!jsonOut.empty()) {
            std::ofstream out(jsonOut, std::ios::binary);
            if (!out) throw std::invalid_argument("cannot write file: " + jsonOut);
            out << reportJson(rep).dump(2) << "\n";
        }
        return rep.allPass() ? kExitOk : kExitInvalid;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const iotacx::ParamsParseError& e) {
        std::fprintf(stderr, "syntax error: %s\n", e.what());
        return kExitSyntax;
    } catch (const iotacx::CoeffParseError& e) {
        std::fprintf(stderr, "syntax error: %s\n", e.what());
        return kExitSyntax;
    } catch (const nlohmann::json::parse_error& e) {
        std::fprintf(stderr, "syntax error: %s\n", e.what());
        return kExitSyntax;
    } catch (const iotacx::ComplexParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalid;
    }
}
