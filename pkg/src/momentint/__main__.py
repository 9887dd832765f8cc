from momentint.cli import main

main()
