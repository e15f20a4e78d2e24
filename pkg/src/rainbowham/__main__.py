"""
Make rainbowham executable as a module: python -m rainbowham
"""

from rainbowham.cli import main

if __name__ == "__main__":
    main()
