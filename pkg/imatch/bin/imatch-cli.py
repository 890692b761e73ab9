#!/usr/bin/env python3
import sys

from imatch.cli import dispatch

if __name__ == "__main__":
    sys.exit(dispatch(sys.argv[1:]))
