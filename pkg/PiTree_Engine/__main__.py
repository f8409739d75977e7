from PiTree_Engine.verify.cli import main

raise SystemExit(main())
