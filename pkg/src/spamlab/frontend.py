import argparse
import os
import sys
from typing import List, Optional

from termcolor import colored

from .bench import (
    FORMATS,
    ExperimentConfig,
    emit_report,
    featurize,
    prepare,
    resolve_seed,
    run_experiment,
    run_grid,
)
from .bench.emit import render_scree
from .utils import log
from .utils.const import (
    DEFAULT_OUT_DIR,
    DEFAULT_PCA_K,
    DEFAULT_SEED,
    DEFAULT_TRAIN_FRACTION,
    ClassifierKind,
    FeatureMethod,
)
from .utils.errors import SpamLabError
from .utils.loader import write_text

__all__ = ["FrontEnd", "main"]

# the CLI spells TF-IDF + PCA as plain "tfidf"
FEATURE_CHOICES = {
    "bow": FeatureMethod.BOW,
    "tfidf": FeatureMethod.TFIDF_PCA,
    "tfidf_raw": FeatureMethod.TFIDF,
}


class FrontEnd:
    def __init__(self, prog: str = "spamlab") -> None:
        self.parser = self._build_parser(prog)

    @staticmethod
    def _common(parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--data", required=True, help="SMS corpus CSV (Category, Message)")
        parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
        parser.add_argument("--train-frac", type=float, default=DEFAULT_TRAIN_FRACTION)
        parser.add_argument("--pca-k", type=int, default=DEFAULT_PCA_K)
        parser.add_argument("--out", default=DEFAULT_OUT_DIR)
        parser.add_argument("--stopwords", default=None, help="one stopword per line")
        parser.add_argument("--quiet", action="store_true")

    @staticmethod
    def _model_flags(parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--k", type=int, default=None, help="KNN neighbours")
        parser.add_argument("--c", type=float, default=None, help="SVM penalty")
        parser.add_argument("--epochs", type=int, default=None, help="DNN epochs")
        parser.add_argument("--dump-vocab", default=None)
        parser.add_argument("--format", nargs="+", choices=FORMATS, default=list(FORMATS))

    def _build_parser(self, prog: str) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(prog=prog, description="SMS spam classifier benchmark")
        commands = parser.add_subparsers(dest="command", required=True)

        bench = commands.add_parser("bench", help="run all 12 classifier/feature cells")
        self._common(bench)
        self._model_flags(bench)
        bench.add_argument("--jobs", type=int, default=1)

        run = commands.add_parser("run", help="run a single experiment")
        self._common(run)
        self._model_flags(run)
        run.add_argument("--classifier", required=True, choices=[k.value for k in ClassifierKind])
        run.add_argument("--features", required=True, choices=list(FEATURE_CHOICES))
        run.add_argument("--save-model", default=None)
        run.add_argument(
            "--model-seed",
            type=int,
            default=None,
            help="SVM/DNN seed; bench seed + cell index re-runs one grid cell",
        )

        scree = commands.add_parser("scree", help="explained variance of the TF-IDF PCA")
        self._common(scree)

        return parser

    def config(self, args: argparse.Namespace) -> ExperimentConfig:
        overrides = {}
        for flag, key in (("k", "k"), ("c", "C"), ("epochs", "epochs")):
            value = getattr(args, flag, None)
            if value is not None:
                overrides[key] = value

        return ExperimentConfig(
            data_path=args.data,
            classifier=getattr(args, "classifier", ClassifierKind.NB.value),
            features=FEATURE_CHOICES[getattr(args, "features", "tfidf")],
            train_fraction=args.train_frac,
            seed=resolve_seed(args.seed),
            pca_k=args.pca_k,
            hyperparameters=overrides,
            stopwords_path=args.stopwords,
            dump_vocab=getattr(args, "dump_vocab", None),
            save_model=getattr(args, "save_model", None),
            model_seed=getattr(args, "model_seed", None),
        ).validate()

    def info(self, config: ExperimentConfig, command: str) -> None:
        print(
            "[INFO] "
            + colored("Command: ", attrs=["bold"])
            + colored(command, color="blue", attrs=["bold"])
            + colored("  Seed: ", attrs=["bold"])
            + colored(f"{config.seed}", color="blue", attrs=["bold"])
        )

    def bench(self, args: argparse.Namespace) -> None:
        config = self.config(args)
        if log.is_verbose():
            self.info(config, "bench")
        report = run_grid(config, jobs=args.jobs)
        for path in emit_report(report, args.format, args.out):
            log.info("Wrote", path)
        failed = [cell.cell for cell in report.cells if not cell.ok]
        if failed:
            log.warn(f"{len(failed)} cell(s) failed: {', '.join(failed)}")

    def run(self, args: argparse.Namespace) -> None:
        config = self.config(args)
        if log.is_verbose():
            self.info(config, "run")
        report = run_experiment(config)
        for path in emit_report(report, args.format, args.out):
            log.info("Wrote", path)

    def scree(self, args: argparse.Namespace) -> None:
        config = self.config(args)
        prepared = prepare(config)
        features = featurize(prepared, FeatureMethod.TFIDF_PCA, config.pca_k)
        text = render_scree(features.scree)
        # the table itself always goes to stdout
        sys.stdout.write(text)
        log.info("Wrote", write_text(os.path.join(args.out, "scree.csv"), text))

    def main(self, argv: Optional[List[str]] = None) -> int:
        try:
            args = self.parser.parse_args(argv)
        except SystemExit as e:
            # usage errors are configuration errors
            return 0 if e.code in (0, None) else 1
        log.set_verbose(not args.quiet)
        try:
            getattr(self, args.command)(args)
        except SpamLabError as e:
            log.error(str(e))
            return e.exit_code
        return 0


def main(argv: Optional[List[str]] = None) -> int:
    return FrontEnd().main(argv)
