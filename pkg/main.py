import argparse
import sys

from src.config.settings import SHOW_PROGRESS
from src.services.nn import ARCHITECTURES
from src.states_and_contexts.experiment import ExperimentConfig
from src.tools.attack_tools import cmd_attack
from src.tools.dataset_tools import cmd_gen
from src.tools.detection_tools import cmd_roc
from src.tools.report_tools import cmd_report
from src.tools.training_tools import cmd_train
from src.utils.errors import PgcError

IO_EXIT_CODE = 7

VERBS = ("gen", "train", "attack", "roc", "report", "pipeline")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pgc-lab",
        description="Clonability attack and defender evaluation on simulated printable graphical codes.",
    )
    parser.add_argument("verb", choices=VERBS, help="Pipeline step to run (pipeline = gen, train, attack, roc, report)")
    parser.add_argument("--config", help="Experiment config JSON (defaults to the desk-scale setup)")
    parser.add_argument("--out", help="Run directory (overrides output_dir)")
    parser.add_argument("--seed", type=int, help="Overrides the dataset and training seeds")
    parser.add_argument("--printer", help="Printer id (defaults to every printer in the config)")
    parser.add_argument("--arch", choices=ARCHITECTURES, help="Network architecture (defaults to training.arch)")
    parser.add_argument("--model", help="Model file for `attack` (defaults to the one `train` wrote)")
    return parser


def load_config(args: argparse.Namespace) -> ExperimentConfig:
    config = ExperimentConfig.load(args.config) if args.config else ExperimentConfig.desk_scale()
    if args.seed is not None:
        config = config.with_seed(args.seed)
    return config


def run(args: argparse.Namespace) -> None:
    config = load_config(args)
    printers = [args.printer] if args.printer else config.printer_ids
    for printer in printers:
        config.printer(printer)

    steps = ["gen", "train", "attack", "roc", "report"] if args.verb == "pipeline" else [args.verb]
    for step in steps:
        if step == "gen":
            print(cmd_gen(config, out=args.out, progress=SHOW_PROGRESS))
        elif step == "report":
            print(cmd_report(config, out=args.out))
        else:
            for printer in printers:
                if step == "train":
                    print(cmd_train(config, printer, arch=args.arch, out=args.out, progress=SHOW_PROGRESS))
                elif step == "attack":
                    print(cmd_attack(config, printer, model_path=args.model, arch=args.arch, out=args.out))
                else:
                    print(cmd_roc(config, printer, arch=args.arch, out=args.out))


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        run(args)
    except PgcError as e:
        print(f"error[{e.category}]: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"error[io]: {e}", file=sys.stderr)
        return IO_EXIT_CODE
    return 0


if __name__ == "__main__":
    sys.exit(main())
