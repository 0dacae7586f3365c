from src.cli.cli import app as cli_app


def main():
    cli_app()


if __name__ == "__main__":
    main()
