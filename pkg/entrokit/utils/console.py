import sys


class Colors:
    GREEN = '\033[92m'
    RED = '\033[91m'
    YELLOW = '\033[93m'
    BLUE = '\033[94m'
    RESET = '\033[0m'
    BOLD = '\033[1m'


# Status lines go to stderr so stdout stays machine-readable CSV.

def print_success(message: str):
    print(f"{Colors.GREEN}✓ {message}{Colors.RESET}", file=sys.stderr)


def print_error(message: str):
    print(f"{Colors.RED}✗ {message}{Colors.RESET}", file=sys.stderr)


def print_info(message: str):
    print(f"{Colors.BLUE}ℹ {message}{Colors.RESET}", file=sys.stderr)


def print_warning(message: str):
    print(f"{Colors.YELLOW}⚠ {message}{Colors.RESET}", file=sys.stderr)
