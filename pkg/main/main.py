import fewlab.defaults as fd


def main():
    runner = fd.ExperimentRunner()
    controller = fd.ExperimentControllerCLI(runner)
    return controller.run()


if __name__ == "__main__":
    raise SystemExit(main())
